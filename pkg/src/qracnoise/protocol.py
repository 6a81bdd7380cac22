"""Success probabilities, the quantum/classical ratio and threshold search."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import NoiseChannel, apply_channel, gamma_t_to_p
from .encoding import Strategy, noiseless_strategy
from .linalg import DimensionError, DomainError

THRESHOLD_FTOL = 1e-6
THRESHOLD_XTOL = 1e-10
SCAN_STEP = 0.01
SCAN_MAX = 6.0


def classical_success(d: int) -> float:
    """Best classical average success for 2 dits of size d sent as one dit."""
    if int(d) != d or d < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {d!r}")
    return 0.5 * (1.0 + 1.0 / d)


def received_states(strategy: Strategy, channel: NoiseChannel) -> np.ndarray:
    if strategy.dim != channel.dim:
        raise DimensionError(f"strategy has d={strategy.dim} but channel has d={channel.dim}")
    return apply_channel(channel, strategy.states)


def average_success(strategy: Strategy, channel: NoiseChannel) -> float:
    """``1/(2 d^2) sum_{x0,x1} Tr[N(rho_x0x1) (M_x0 + M_x1)]``."""
    d = strategy.dim
    recv = received_states(strategy, channel)
    q0 = np.einsum("abij,aji->", recv, strategy.effects_q0)
    q1 = np.einsum("abij,bji->", recv, strategy.effects_q1)
    return float((q0 + q1).real) / (2 * d * d)


def ratio(strategy: Strategy, channel: NoiseChannel) -> float:
    return average_success(strategy, channel) / classical_success(channel.dim)


@dataclass(frozen=True)
class EvalPoint:
    channel_kind: str
    dim: int
    gamma_t: float
    p: float
    pq: float
    pc: float
    ratio: float
    optimized: bool
    iterations: int = 0
    povm_deviation: float = 0.0


@dataclass(frozen=True)
class ThresholdResult:
    channel_kind: str
    dim: int
    gamma_t_star: Optional[float]
    p_star: Optional[float]
    crossed: bool


def evaluate(kind: str, d: int, gamma_t: float, optimizer=None, damping: str = "ladder") -> EvalPoint:
    """Evaluate one (channel, d, gamma_t) point.

    With ``optimizer=None`` the noiseless MUB strategy is used as is;
    otherwise ``optimizer`` is a :class:`~qracnoise.seesaw.SeesawConfig` and
    the strategy is re-optimized for the channel first.
    """
    from .seesaw import povm_deviation, seesaw

    channel = NoiseChannel.from_gamma_t(kind, d, gamma_t, damping=damping)
    pc = classical_success(d)
    if optimizer is None:
        strategy = noiseless_strategy(d)
        pq = average_success(strategy, channel)
        iterations = 0
    else:
        res = seesaw(channel, optimizer)
        strategy, pq, iterations = res.strategy, res.objective, res.iterations
    dev = max(povm_deviation(strategy.effects_q0), povm_deviation(strategy.effects_q1))
    return EvalPoint(kind, d, float(gamma_t), channel.p, pq, pc, pq / pc, optimizer is not None, iterations, dev)


def _evaluate_args(args):
    return evaluate(*args)


def evaluate_grid(kind, d, gammas, optimizer=None, damping="ladder", workers: int = 1) -> list[EvalPoint]:
    """Evaluate many points; results come back in grid order regardless of ``workers``."""
    jobs = [(kind, d, float(g), optimizer, damping) for g in gammas]
    if workers <= 1:
        return [_evaluate_args(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_args, jobs))


def scan_grid(scan_max: float = SCAN_MAX, step: float = SCAN_STEP) -> np.ndarray:
    n = int(round(scan_max / step))
    return np.linspace(0.0, n * step, n + 1)


def _bisect(f, lo: float, hi: float, ftol: float, xtol: float, max_iter: int = 200) -> float:
    """Root of ``f`` bracketed by ``f(lo) > 0 >= f(hi)``.

    Stops once ``|f(mid)| <= ftol`` and the bracket is narrower than ``xtol``.
    """
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or (abs(fm) <= ftol and hi - lo <= xtol):
            return mid
        if fm > 0:
            lo = mid
        else:
            hi = mid
    return mid


def threshold_gamma_t(
    kind: str,
    d: int,
    optimizer=None,
    scan_max: float = SCAN_MAX,
    step: float = SCAN_STEP,
    damping: str = "ladder",
) -> ThresholdResult:
    """First gamma_t at which the quantum advantage is lost (ratio drops to 1).

    Scans ``[0, scan_max]`` with the given step, then bisects the first
    bracket where ``ratio - 1`` changes sign until ``|ratio - 1| <= 1e-6``
    and the bracket is below ``1e-10`` wide.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {d!r}")
    if not scan_max > 0 or not step > 0:
        raise DomainError("scan_max and step must be positive")

    def f(g):
        return evaluate(kind, d, g, optimizer, damping).ratio - 1.0

    grid = scan_grid(scan_max, step)
    prev_g, prev_f = grid[0], f(grid[0])
    for g in grid[1:]:
        fg = f(g)
        if prev_f > 0 >= fg:
            star = g if fg == 0 else _bisect(f, prev_g, g, THRESHOLD_FTOL, THRESHOLD_XTOL)
            return ThresholdResult(kind, d, float(star), gamma_t_to_p(star), True)
        prev_g, prev_f = g, fg
    return ThresholdResult(kind, d, None, None, False)
