import math

import numpy as np
import pytest

from qracnoise.channels import CHANNEL_KINDS, NoiseChannel
from qracnoise.encoding import Strategy, noiseless_strategy
from qracnoise.linalg import DimensionError, DomainError
from qracnoise.protocol import (
    average_success,
    classical_success,
    evaluate,
    evaluate_grid,
    ratio,
    scan_grid,
    threshold_gamma_t,
)
from qracnoise.seesaw import SeesawConfig


def depolarizing_pq(d, p):
    return (1 - p) * (1 + 1 / math.sqrt(d)) / 2 + p / d


def depolarizing_threshold(d):
    p0, pc = (1 + 1 / math.sqrt(d)) / 2, (1 + 1 / d) / 2
    return -math.log(1 - (p0 - pc) / (p0 - 1 / d))


def test_classical_success():
    assert classical_success(2) == 0.75
    assert classical_success(4) == 0.625
    assert classical_success(10**9) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        classical_success(1)


def test_noiseless_qubit_value():
    s = noiseless_strategy(2)
    ch = NoiseChannel("ditflip", 2, 0.0)
    assert average_success(s, ch) == pytest.approx(0.853553390593, abs=1e-12)
    assert ratio(s, ch) == pytest.approx(1.13807118746, abs=1e-10)


@pytest.mark.parametrize("d", range(2, 11))
def test_noiseless_beats_classical(d):
    assert ratio(noiseless_strategy(d), NoiseChannel("dephasing", d, 0.0)) > 1


@pytest.mark.parametrize("d", range(2, 8))
def test_depolarizing_closed_form(d):
    s = noiseless_strategy(d)
    for g in scan_grid(3.0, 0.05):
        ch = NoiseChannel.from_gamma_t("depolarizing", d, g)
        assert average_success(s, ch) == pytest.approx(depolarizing_pq(d, ch.p), abs=1e-12)


def test_depolarizing_extremes():
    assert average_success(noiseless_strategy(2), NoiseChannel("depolarizing", 2, 1.0)) == pytest.approx(0.5, abs=1e-15)
    # qubit crossing: (1 - p)(1 + 1/sqrt2)/2 + p/2 = 3/4  =>  p = 1 - 1/sqrt2
    p = 1 - 1 / math.sqrt(2)
    assert ratio(noiseless_strategy(2), NoiseChannel("depolarizing", 2, p)) == pytest.approx(1.0, abs=1e-9)
    assert 1 - math.exp(-depolarizing_threshold(2)) == pytest.approx(p, abs=1e-14)


@pytest.mark.parametrize("d", range(2, 8))
def test_fully_mixed_states_give_chance(d):
    s = noiseless_strategy(d)
    mixed = Strategy(np.broadcast_to(np.eye(d) / d, s.states.shape).copy(), s.effects_q0, s.effects_q1)
    assert average_success(mixed, NoiseChannel("dephasing", d, 0.0)) == pytest.approx(1 / d, abs=1e-15)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        average_success(noiseless_strategy(2), NoiseChannel("dephasing", 3, 0.1))


@pytest.mark.parametrize("kind", CHANNEL_KINDS)
@pytest.mark.parametrize("d", range(2, 8))
def test_non_optimized_ratio_is_non_increasing(kind, d):
    s = noiseless_strategy(d)
    vals = [ratio(s, NoiseChannel.from_gamma_t(kind, d, g)) for g in scan_grid(6.0, 0.05)]
    assert np.all(np.diff(vals) <= 1e-10)


def test_threshold_examples():
    assert threshold_gamma_t("ditflip", 2).gamma_t_star == pytest.approx(0.35, abs=0.01)
    assert threshold_gamma_t("dephasing", 2).gamma_t_star == pytest.approx(0.88, abs=0.01)
    assert threshold_gamma_t("dephasing", 7).gamma_t_star == pytest.approx(0.09, abs=0.01)


@pytest.mark.parametrize("d", range(2, 8))
def test_depolarizing_threshold_closed_form(d):
    res = threshold_gamma_t("depolarizing", d)
    assert res.crossed
    assert res.gamma_t_star == pytest.approx(depolarizing_threshold(d), abs=1e-6)
    assert res.p_star == pytest.approx(1 - math.exp(-res.gamma_t_star), rel=1e-14)
    pt = evaluate("depolarizing", d, res.gamma_t_star)
    assert abs(pt.ratio - 1) <= 1e-6


def test_depolarizing_threshold_values():
    got = [round(depolarizing_threshold(d), 3) for d in (2, 3, 4)]
    assert got == [0.347, 0.312, 0.288]


def test_dephasing_qubit_threshold():
    assert threshold_gamma_t("dephasing", 2).gamma_t_star == pytest.approx(-math.log(math.sqrt(2) - 1), abs=1e-6)


def test_optimized_dephasing_qubit_never_crosses():
    res = threshold_gamma_t("dephasing", 2, SeesawConfig())
    assert not res.crossed and res.gamma_t_star is None and res.p_star is None


def test_threshold_not_crossed_in_short_range():
    res = threshold_gamma_t("ditflip", 3, scan_max=0.2)
    assert not res.crossed


def test_threshold_bad_args():
    with pytest.raises(DomainError):
        threshold_gamma_t("ditflip", 2, scan_max=0)


def test_eval_point_fields():
    pt = evaluate("amplitudedamping", 3, 0.4)
    assert pt.pc == (1 + 1 / 3) / 2
    assert abs(pt.ratio - pt.pq / pt.pc) <= 1e-14
    assert pt.p == pytest.approx(1 - math.exp(-0.4))
    assert not pt.optimized and pt.iterations == 0
    opt = evaluate("amplitudedamping", 3, 0.4, SeesawConfig())
    assert opt.optimized and opt.iterations >= 1
    assert 0 <= opt.pq <= 1


def test_grid_evaluation_order_independent_of_workers():
    gammas = [0.0, 0.3, 0.6, 0.9]
    serial = evaluate_grid("dephasing", 3, gammas, SeesawConfig(), workers=1)
    parallel = evaluate_grid("dephasing", 3, gammas, SeesawConfig(), workers=2)
    assert serial == parallel
    assert [pt.gamma_t for pt in serial] == gammas
