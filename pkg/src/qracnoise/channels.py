"""Markovian qudit noise channels.

Five channel families act on density operators (or stacks of them, shape
``(..., d, d)``):

* ``ditflip``          shift by a random non-zero amount, Weyl operators W_{0v}
* ``dphaseflip``       random non-trivial phase, Weyl operators W_{v0}
* ``depolarizing``     ``p I/d + (1 - p) rho``
* ``dephasing``        ``<n|rho|m> -> (1 - p)^((n - m)^2) <n|rho|m>``
* ``amplitudedamping`` energy loss towards ``|0>``

The noise strength is ``p = 1 - exp(-gamma_t)`` throughout.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import DimensionError, DomainError

DITFLIP = "ditflip"
DPHASEFLIP = "dphaseflip"
DEPOLARIZING = "depolarizing"
DEPHASING = "dephasing"
AMPLITUDE_DAMPING = "amplitudedamping"

CHANNEL_KINDS = (DITFLIP, DPHASEFLIP, DEPHASING, AMPLITUDE_DAMPING, DEPOLARIZING)
KRAUS_KINDS = (DITFLIP, DPHASEFLIP, AMPLITUDE_DAMPING)
UNITAL_KINDS = (DITFLIP, DPHASEFLIP, DEPOLARIZING, DEPHASING)

# Amplitude damping models.  "ladder" lets level n decay through the
# annihilation operator (each excitation lost independently with
# probability p, truncated at d levels); "ground" sends every excited
# level straight to |0> with probability p.  They coincide for d = 2.
DAMPING_MODELS = ("ladder", "ground")


def gamma_t_to_p(gamma_t: float) -> float:
    if not gamma_t >= 0:
        raise DomainError(f"gamma_t must be >= 0, got {gamma_t!r}")
    return float(-np.expm1(-gamma_t))


@dataclass(frozen=True)
class NoiseChannel:
    kind: str
    dim: int
    p: float
    damping: str = "ladder"

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise DomainError(f"unknown channel kind {self.kind!r}; expected one of {CHANNEL_KINDS}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.dim!r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"noise strength must lie in [0, 1], got {self.p!r}")
        if self.damping not in DAMPING_MODELS:
            raise DomainError(f"unknown damping model {self.damping!r}")

    @classmethod
    def from_gamma_t(cls, kind: str, dim: int, gamma_t: float, **kw) -> "NoiseChannel":
        return cls(kind, dim, gamma_t_to_p(gamma_t), **kw)

    @property
    def unital(self) -> bool:
        return self.kind in UNITAL_KINDS


def weyl_operator(d: int, nu: int, mu: int) -> np.ndarray:
    """``W_{nu mu} = sum_k w^(k nu) |k><k + mu mod d|``."""
    if int(d) != d or d < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {d!r}")
    if not (0 <= nu < d and 0 <= mu < d):
        raise DomainError(f"Weyl indices ({nu}, {mu}) out of range for d={d}")
    k = np.arange(d)
    W = np.zeros((d, d), dtype=np.complex128)
    W[k, (k + mu) % d] = np.exp(2j * np.pi * ((k * nu) % d) / d)
    return W


def _ladder_damping_kraus(d: int, p: float) -> list[np.ndarray]:
    eta = 1.0 - p
    ops = []
    for lost in range(d):
        K = np.zeros((d, d), dtype=np.complex128)
        for n in range(lost, d):
            K[n - lost, n] = np.sqrt(comb(n, lost) * eta ** (n - lost) * p**lost)
        ops.append(K)
    return ops


def _ground_damping_kraus(d: int, p: float) -> list[np.ndarray]:
    K0 = np.diag([1.0] + [np.sqrt(1.0 - p)] * (d - 1)).astype(np.complex128)
    ops = [K0]
    for nu in range(1, d):
        K = np.zeros((d, d), dtype=np.complex128)
        K[0, nu] = np.sqrt(p)
        ops.append(K)
    return ops


def kraus_set(channel: NoiseChannel) -> list[np.ndarray]:
    """Kraus operators for the Kraus-defined families (dit flip, d-phase flip, damping)."""
    d, p = channel.dim, channel.p
    if channel.kind == DITFLIP:
        weights = [1.0 - p] + [p / (d - 1)] * (d - 1)
        return [np.sqrt(w) * weyl_operator(d, 0, nu) for nu, w in enumerate(weights)]
    if channel.kind == DPHASEFLIP:
        weights = [1.0 - p] + [p / (d - 1)] * (d - 1)
        return [np.sqrt(w) * weyl_operator(d, mu, 0) for mu, w in enumerate(weights)]
    if channel.kind == AMPLITUDE_DAMPING:
        if channel.damping == "ladder":
            return _ladder_damping_kraus(d, p)
        return _ground_damping_kraus(d, p)
    raise DomainError(f"{channel.kind} is applied as a direct map and has no Kraus set here")


def dephasing_mask(d: int, p: float) -> np.ndarray:
    n = np.arange(d)
    return (1.0 - p) ** ((n[:, None] - n[None, :]) ** 2)


def _check_operand(channel: NoiseChannel, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    d = channel.dim
    if X.ndim < 2 or X.shape[-2:] != (d, d):
        raise DimensionError(f"expected operators of shape (..., {d}, {d}), got {X.shape}")
    return X


def _identity_like(X: np.ndarray, scale) -> np.ndarray:
    d = X.shape[-1]
    return np.asarray(scale)[..., None, None] * np.eye(d)


def apply_channel(channel: NoiseChannel, rho) -> np.ndarray:
    """Schrodinger-picture action on a density operator or a stack of them."""
    rho = _check_operand(channel, rho)
    p, d = channel.p, channel.dim
    if channel.kind == DEPOLARIZING:
        tr = np.trace(rho, axis1=-2, axis2=-1)
        return _identity_like(rho, p * tr / d) + (1.0 - p) * rho
    if channel.kind == DEPHASING:
        return dephasing_mask(d, p) * rho
    out = np.zeros_like(rho)
    for K in kraus_set(channel):
        out += K @ rho @ K.conj().T
    return out


def adjoint_apply(channel: NoiseChannel, effect) -> np.ndarray:
    """Heisenberg-picture action, ``Tr[N(rho) E] = Tr[rho N^dag(E)]``."""
    effect = _check_operand(channel, effect)
    p, d = channel.p, channel.dim
    if channel.kind == DEPOLARIZING:
        tr = np.trace(effect, axis1=-2, axis2=-1)
        return (1.0 - p) * effect + _identity_like(effect, p * tr / d)
    if channel.kind == DEPHASING:
        # real symmetric Hadamard mask: the map is self-adjoint
        return dephasing_mask(d, p) * effect
    out = np.zeros_like(effect)
    for K in kraus_set(channel):
        out += K.conj().T @ effect @ K
    return out


def choi_matrix(channel: NoiseChannel) -> np.ndarray:
    """``(N x id)(|W><W|)`` with ``|W> = sum_k |kk>/sqrt(d)``; shape ``(d^2, d^2)``."""
    d = channel.dim
    units = np.zeros((d, d, d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            units[i, j, i, j] = 1.0
    images = apply_channel(channel, units)
    C = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            C += np.kron(images[i, j], units[i, j])
    return C / d


def partial_trace_first(M: np.ndarray, d: int) -> np.ndarray:
    """Trace out the first ``d``-dimensional factor of a ``(d*d, d*d)`` operator."""
    return np.einsum("iaib->ab", M.reshape(d, d, d, d))
