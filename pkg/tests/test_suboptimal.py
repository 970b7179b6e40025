import math

import numpy as np
import pytest

from bloch_synthesis.exceptions import InvalidArguments
from bloch_synthesis.models import SOUTH, FamilyTag, PhysicalParams
from bloch_synthesis.suboptimal import (
    circle_optimal,
    compare,
    reduced_alpha,
    s1_cycle_matrix,
    s1_cycle_order,
    s1_cycles,
    s1_predicted_miss,
    s1_schedule,
    s2_schedule,
    simulate_circle,
)
from bloch_synthesis.switching import theta_of_alpha


def test_s1_cycle_count():
    assert s1_cycles(0.1) == 6
    assert s1_cycles(0.01) == 56


def test_s1_cycle_order():
    assert s1_cycle_order() == [FamilyTag.PM, FamilyTag.MM, FamilyTag.MP, FamilyTag.PP]


@pytest.mark.parametrize("alpha", [0.01, 0.02, 0.03, 0.05, 0.08, 0.1])
def test_s1_miss_follows_overshoot(alpha):
    report = s1_schedule(alpha)
    assert report.n == s1_cycles(alpha)
    assert report.miss_angle == pytest.approx(s1_predicted_miss(alpha), abs=alpha**2)
    assert report.miss_angle <= 4 * math.sqrt(2) * alpha + alpha**2
    assert report.transfer_time_normalized == pytest.approx(report.n * 2 * math.pi)
    assert report.transfer_time_physical is None


def test_s1_miss_within_3_alpha_at_small_alpha():
    assert s1_schedule(0.01).miss_angle <= 0.03


def test_s1_overshoot_exceeds_3_alpha_at_0_05():
    # n = 12 cycles turn 0.253 rad past the south pole
    assert s1_schedule(0.05).miss_angle > 0.15
    assert s1_predicted_miss(0.05) == pytest.approx(0.2550, abs=1e-3)


def test_s1_start_permutations_miss_equally():
    misses = [s1_schedule(0.05, start=tag).miss_angle for tag in FamilyTag]
    assert max(misses) - min(misses) < 1e-9


def test_s1_cycle_matrix_is_rotation():
    M = s1_cycle_matrix(0.05)
    np.testing.assert_allclose(M @ M.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(M) == pytest.approx(1.0)


@pytest.mark.parametrize("alpha", [0.05, 0.1, 0.2])
def test_s2_flips_exactly(alpha):
    report = s2_schedule(alpha, scale=2.0)
    assert report.miss_angle <= 1e-8
    assert 0.0 < report.gamma <= 1.0
    assert report.n == math.ceil(math.pi / (4 * abs(theta_of_alpha(alpha))))
    assert report.transfer_time_physical == pytest.approx(report.transfer_time_normalized / 2.0)
    assert np.asarray(report.final_state) == pytest.approx([0.0, 0.0, -1.0], abs=1e-7)


def test_reduced_alpha_solves_cycle_condition():
    n = 7
    a_bar = reduced_alpha(0.1, n)
    assert a_bar <= 0.1
    assert 4 * n * abs(theta_of_alpha(a_bar)) == pytest.approx(math.pi, abs=1e-10)


def test_strategies_reject_bad_alpha():
    with pytest.raises(InvalidArguments):
        s1_schedule(1.0)
    with pytest.raises(InvalidArguments):
        s2_schedule(0.0)


def test_circle_law():
    p = PhysicalParams(E=1.0, M1=0.1, M2=0.1)
    law = circle_optimal(p)
    assert law.transfer_time == pytest.approx(math.pi / 0.2)
    assert law.omega_r == pytest.approx(2.0)
    final = simulate_circle(p)
    assert final.angle_to(SOUTH) < 1e-6


def test_circle_law_needs_equal_bounds():
    with pytest.raises(InvalidArguments):
        circle_optimal(PhysicalParams(E=1.0, M1=0.2, M2=0.1))


def test_compare_tends_to_quarter_pi():
    ratio = compare(0.005)
    assert 0.77 <= ratio <= 0.80
    assert abs(compare(0.005) - math.pi / 4) < abs(compare(0.1) - math.pi / 4) + 1e-3


def test_compare_unknown_strategy():
    with pytest.raises(InvalidArguments):
        compare(0.1, strategy="s3")
