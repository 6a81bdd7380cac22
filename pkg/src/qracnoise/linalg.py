"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The Hermitian
eigensolver is a cyclic complex Jacobi method so that results are fully
deterministic (fixed sweep order, fixed sort and phase conventions), which
keeps see-saw runs reproducible bit for bit.
"""

from typing import NamedTuple

import numba
import numpy as np

HERMITIAN_RTOL = 1e-9
JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100
PHASE_CUTOFF = 1e-8


class DimensionError(ValueError):
    pass


class DomainError(ValueError):
    pass


class EigResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    return A


@numba.njit(cache=True)
def _jacobi_sweeps(A, rtol, max_sweeps):
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    norm = np.sqrt(np.sum(np.abs(A) ** 2))
    target = rtol * norm
    tiny = 1e-300
    sweeps = 0
    while sweeps < max_sweeps:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(A[i, j]) ** 2
        if np.sqrt(off) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= tiny:
                    continue
                phase = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = [[c, s], [-s conj(phase), c conj(phase)]] on the (p, q) plane
                up = -s * np.conj(phase)
                uq = c * np.conj(phase)
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp + up * akq
                    A[k, q] = s * akp + uq * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk + np.conj(up) * aqk
                    A[q, k] = s * apk + np.conj(uq) * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp + up * vkq
                    V[k, q] = s * vkp + uq * vkq
        sweeps += 1
    return A, V, sweeps


def check_hermitian(A) -> np.ndarray:
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {A.shape}")
    scale = max(1.0, np.linalg.norm(A))
    if np.linalg.norm(A - A.conj().T) > HERMITIAN_RTOL * scale:
        raise DomainError("matrix is not Hermitian within tolerance")
    return A


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate ``vec`` so its first non-negligible component is real and >= 0."""
    idx = np.flatnonzero(np.abs(vec) > PHASE_CUTOFF)
    if idx.size == 0:
        return vec
    lead = vec[idx[0]]
    return vec * (np.conj(lead) / abs(lead))


def hermitian_eig(A) -> EigResult:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back sorted in non-increasing order (ties keep the
    column order left by the rotations) and each eigenvector column carries
    the phase convention of :func:`fix_phase`.

    Raises
    ------
    DimensionError
        If ``A`` is not square.
    DomainError
        If ``A`` deviates from Hermitian by more than ``1e-9 * max(1, ||A||_F)``.
    """
    A = check_hermitian(A)
    work = 0.5 * (A + A.conj().T)
    D, V, _ = _jacobi_sweeps(np.ascontiguousarray(work), JACOBI_RTOL, JACOBI_MAX_SWEEPS)
    evals = np.diag(D).real.copy()
    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    V = V[:, order]
    for k in range(V.shape[1]):
        col = V[:, k]
        V[:, k] = fix_phase(col / np.linalg.norm(col))
    return EigResult(evals, V)


def top_eigenvector(A) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a Hermitian matrix and a unit eigenvector for it."""
    res = hermitian_eig(A)
    return float(res.eigenvalues[0]), res.eigenvectors[:, 0].copy()


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def frobenius_distance(A, B) -> float:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch: {A.shape} vs {B.shape}")
    return float(np.linalg.norm(A - B))


def projector(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=np.complex128)
    return np.outer(vec, vec.conj())


def is_density_operator(rho, atol: float = 1e-10) -> bool:
    """Hermitian, trace one and PSD (smallest eigenvalue >= -atol)."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.linalg.norm(rho - rho.conj().T) > atol:
        return False
    if abs(np.trace(rho) - 1.0) > atol:
        return False
    return hermitian_eig(rho).eigenvalues[-1] >= -atol
