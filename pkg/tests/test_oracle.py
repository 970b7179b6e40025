import math

import pytest

from bloch_synthesis.core import flow
from bloch_synthesis.exceptions import BudgetExceeded
from bloch_synthesis.models import NORTH, SOUTH, BlochPoint, Control, FamilyTag
from bloch_synthesis.oracle import min_time_bracket, min_time_brackets, verify_bb_structure
from bloch_synthesis.synthesis import extremal_point, solve_synthesis


def test_bracket_for_target_on_a_bang_arc(params):
    # the pure (1,-1) arc enters the 0.02 ball about eps / sin(alpha) before t = 0.7
    target = flow(NORTH, Control(u1=1.0, u2=-1.0), 0.7, params)
    result = min_time_bracket(target, params, dt=0.01, eps=0.02)
    assert result.t_lower <= result.t_hi
    assert 0.60 <= result.t_hi <= 0.70
    assert result.t_hi - result.t_lo == pytest.approx(0.01)
    assert result.frontier_peak > 1


def test_bracket_at_the_north_pole(params):
    result = min_time_bracket(NORTH, params, dt=0.02, eps=0.05)
    assert (result.t_lo, result.t_hi) == (0.0, 0.0)
    assert result.t_lower == 0.0


def test_sweep_serves_several_targets(params):
    first = extremal_point(0.7, FamilyTag.PP, 1.0, params)
    second = extremal_point(0.5, FamilyTag.MM, 1.0, params)
    together = min_time_brackets([first, second], params, dt=0.02, eps=0.05)
    alone = [min_time_bracket(t, params, dt=0.02, eps=0.05) for t in (first, second)]
    assert [r.t_hi for r in together] == [r.t_hi for r in alone]


def test_sweep_budget(params):
    with pytest.raises(BudgetExceeded):
        min_time_bracket(SOUTH, params, dt=0.02, eps=0.05, max_steps=2)


def test_sweep_rejects_bad_steps(params):
    with pytest.raises(ValueError):
        min_time_bracket(SOUTH, params, dt=0.0, eps=0.05)
    with pytest.raises(ValueError):
        min_time_bracket(SOUTH, params, dt=0.02, eps=-1.0)


def _margin(params, eps):
    return eps / math.sin(params.alpha)


def _assert_consistent(result, total, params):
    assert result.t_lower <= total + 1e-9
    assert result.t_lo - result.dt <= total
    assert total <= result.t_hi + result.dt + 2.0 * _margin(params, result.eps)


def test_oracle_agrees_with_synthesis(params):
    target = extremal_point(1.0, FamilyTag.PP, 0.8, params)
    _, total = solve_synthesis(target, params)
    _assert_consistent(min_time_bracket(target, params, dt=0.02, eps=0.05), total, params)


def test_halving_dt_never_delays_the_bracket(params):
    target = extremal_point(1.0, FamilyTag.PP, 0.8, params)
    coarse = min_time_bracket(target, params, dt=0.02, eps=0.05)
    fine = min_time_bracket(target, params, dt=0.01, eps=0.05)
    assert fine.t_hi <= coarse.t_hi + coarse.dt


def test_halving_dt_and_eps_delays_by_at_most_the_ball(params):
    target = extremal_point(1.0, FamilyTag.MP, 0.6, params)
    coarse = min_time_bracket(target, params, dt=0.02, eps=0.05)
    fine = min_time_bracket(target, params, dt=0.01, eps=0.025)
    assert fine.t_hi <= coarse.t_hi + coarse.dt + _margin(params, coarse.eps)


@pytest.mark.slow
def test_oracle_brackets_ten_seeded_targets(params, seeded_targets):
    targets = seeded_targets(10, 8)
    results = min_time_brackets(targets, params, dt=0.02, eps=0.05)
    for target, result in zip(targets, results):
        _, total = solve_synthesis(target, params)
        _assert_consistent(result, total, params)


@pytest.mark.slow
def test_equator_target_within_oracle_bracket(params):
    target = BlochPoint.from_array([math.cos(0.3), math.sin(0.3), 0.0])
    _, total = solve_synthesis(target, params)
    _assert_consistent(min_time_bracket(target, params, dt=0.02, eps=0.05), total, params)


def test_structure_symmetric(params):
    report = verify_bb_structure(params, n_theta=24, horizon=4.0 * math.pi)
    assert report.passed
    assert report.alternation_failures == 0
    assert report.worst_gap_spread < 1e-8
    assert report.n_extremals == 24


def test_structure_asymmetric(asymmetric):
    assert verify_bb_structure(asymmetric, n_theta=24, horizon=4.0 * math.pi).passed


def test_structure_needs_angles(params):
    with pytest.raises(ValueError):
        verify_bb_structure(params, n_theta=2)
