"""Mutually unbiased bases and the 2^(d) -> 1 encoding/decoding strategy."""

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, DomainError, projector


def _check_dim(d: int) -> int:
    if int(d) != d or d < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


def computational_basis(d: int) -> list[np.ndarray]:
    d = _check_dim(d)
    return list(np.eye(d, dtype=np.complex128))


def fourier_basis(d: int) -> list[np.ndarray]:
    """``|f_l> = d^-1/2 sum_n w^(l n) |n>`` with ``w = exp(2 pi i / d)``."""
    d = _check_dim(d)
    n = np.arange(d)
    # reduce the exponent mod d before exponentiating to keep phases exact-ish
    F = np.exp(2j * np.pi * (np.outer(n, n) % d) / d) / np.sqrt(d)
    return list(F)


def encoding_state(d: int, x0: int, x1: int) -> np.ndarray:
    """Unit vector proportional to ``|e_x0> + |f_x1>``, phase aligned.

    The overlap ``<e_x0|f_x1>`` has modulus ``1/sqrt(d)`` but in general a
    non-trivial phase.  The Fourier ket is rotated so the overlap becomes
    real and positive, which makes the normalisation exactly
    ``1/sqrt(2 + 2/sqrt(d))`` and puts the state on the top eigenvector of
    ``|e_x0><e_x0| + |f_x1><f_x1|`` for every string.
    """
    d = _check_dim(d)
    for x in (x0, x1):
        if int(x) != x or not 0 <= x < d:
            raise DomainError(f"digit {x!r} out of range for d={d}")
    e = computational_basis(d)[x0]
    f = fourier_basis(d)[x1]
    overlap = np.vdot(e, f)
    psi = e + f * (np.conj(overlap) / abs(overlap))
    return psi / np.linalg.norm(psi)


@dataclass(frozen=True)
class Strategy:
    """Encoding states ``states[x0, x1]`` and per-question decoding effects.

    ``states`` has shape ``(d, d, d, d)``: the first two axes index the
    string, the last two hold the density matrix.  ``effects_q0[b]`` is
    Bob's effect for guessing ``x0 = b``; ``effects_q1`` likewise for ``x1``.
    """

    states: np.ndarray
    effects_q0: np.ndarray
    effects_q1: np.ndarray

    def __post_init__(self):
        d = self.states.shape[-1]
        if self.states.shape != (d, d, d, d):
            raise DimensionError(f"states must have shape (d, d, d, d), got {self.states.shape}")
        for eff in (self.effects_q0, self.effects_q1):
            if eff.shape != (d, d, d):
                raise DimensionError(f"effects must have shape (d, d, d), got {eff.shape}")

    @property
    def dim(self) -> int:
        return self.states.shape[-1]


def noiseless_strategy(d: int) -> Strategy:
    d = _check_dim(d)
    states = np.empty((d, d, d, d), dtype=np.complex128)
    for x0 in range(d):
        for x1 in range(d):
            states[x0, x1] = projector(encoding_state(d, x0, x1))
    eff0 = np.array([projector(v) for v in computational_basis(d)])
    eff1 = np.array([projector(v) for v in fourier_basis(d)])
    return Strategy(states, eff0, eff1)
