"""See-saw optimization of encoding states and decoding effects.

Both sub-problems (states with effects fixed, effects with states fixed)
only constrain each operator to be trace one and PSD.  Under that
constraint ``max Tr[X A]`` is the largest eigenvalue of ``A``, attained by
the projector onto a top eigenvector, so every half-step is solved in
closed form and the objective can never decrease.

POVM completeness (effects of one question summing to the identity) is
not imposed; :func:`povm_deviation` reports how far each question is from it.
"""

from dataclasses import dataclass, field

import numpy as np

from .channels import NoiseChannel, adjoint_apply, apply_channel
from .encoding import Strategy, noiseless_strategy
from .linalg import DomainError, projector, top_eigenvector
from .protocol import average_success


@dataclass(frozen=True)
class SeesawConfig:
    tol: float = 1e-10
    max_iters: int = 500
    restarts: int = 1
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iters < 1 or self.restarts < 1:
            raise DomainError("max_iters and restarts must be >= 1")


@dataclass
class SeesawResult:
    strategy: Strategy
    objective_trace: list[float] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0

    @property
    def objective(self) -> float:
        return self.objective_trace[-1]


def _top_projectors(mats: np.ndarray) -> np.ndarray:
    flat = mats.reshape(-1, *mats.shape[-2:])
    out = np.array([projector(top_eigenvector(A)[1]) for A in flat])
    return out.reshape(mats.shape)


def optimize_states(channel: NoiseChannel, effects_q0, effects_q1) -> np.ndarray:
    """Best state for each string given fixed effects, shape ``(d, d, d, d)``."""
    eff0 = np.asarray(effects_q0, dtype=np.complex128)
    eff1 = np.asarray(effects_q1, dtype=np.complex128)
    pulled_back = adjoint_apply(channel, eff0[:, None] + eff1[None, :])
    return _top_projectors(pulled_back)


def optimize_measurements(channel: NoiseChannel, states) -> tuple[np.ndarray, np.ndarray]:
    """Best effects for each question given fixed encoding states."""
    recv = apply_channel(channel, states)
    return _top_projectors(recv.sum(axis=1)), _top_projectors(recv.sum(axis=0))


def povm_deviation(effects) -> float:
    effects = np.asarray(effects)
    return float(np.linalg.norm(effects.sum(axis=0) - np.eye(effects.shape[-1])))


def _random_effects(rng: np.random.Generator, d: int) -> np.ndarray:
    vecs = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return np.array([projector(v / np.linalg.norm(v)) for v in vecs])


def _run(channel: NoiseChannel, eff0: np.ndarray, eff1: np.ndarray, config: SeesawConfig) -> SeesawResult:
    trace: list[float] = []
    prev = -np.inf
    converged = False
    it = 0
    for it in range(1, config.max_iters + 1):
        states = optimize_states(channel, eff0, eff1)
        trace.append(average_success(Strategy(states, eff0, eff1), channel))
        eff0, eff1 = optimize_measurements(channel, states)
        current = average_success(Strategy(states, eff0, eff1), channel)
        trace.append(current)
        if current - prev < config.tol:
            converged = True
            break
        prev = current
    return SeesawResult(Strategy(states, eff0, eff1), trace, converged, it)


def seesaw(channel: NoiseChannel, config: SeesawConfig = SeesawConfig()) -> SeesawResult:
    """Alternate state and measurement optimization until the objective stalls.

    The first run starts from the computational/Fourier projectors.  Extra
    restarts (``config.restarts > 1``) start from random rank-one effects
    drawn from ``config.seed``; the run with the highest final objective is
    returned, earliest run first on ties.
    """
    start = noiseless_strategy(channel.dim)
    best = _run(channel, start.effects_q0, start.effects_q1, config)
    rng = np.random.default_rng(config.seed)
    for _ in range(config.restarts - 1):
        eff0, eff1 = _random_effects(rng, channel.dim), _random_effects(rng, channel.dim)
        res = _run(channel, eff0, eff1, config)
        if res.objective > best.objective:
            best = res
    return best
