import math

import numpy as np
import pytest

from bloch_synthesis.core import make_params
from bloch_synthesis.exceptions import BetaNotQuarterPi, DomainError
from bloch_synthesis.models import FamilyTag
from bloch_synthesis.switching import (
    first_switch_equation,
    first_switch_of_theta,
    interbang_duration,
    s_max,
    s_max_taylor,
    theta_of_alpha,
    v_general_closed_form,
    v_pi4_closed_form,
    v_taylor,
)
from bloch_synthesis.trig import arccos_clamped


def _interior_grid(top: float, n: int = 9) -> np.ndarray:
    return np.linspace(0.02 * top, 0.98 * top, n)


def test_s_max_symmetric_families_agree(params):
    values = {family: s_max(family, params) for family in FamilyTag}
    assert max(values.values()) - min(values.values()) < 1e-15
    assert values[FamilyTag.PP] > math.pi / 2


def test_s_max_mixed_families_swap_bounds(asymmetric):
    q_pp = (math.sin(asymmetric.alpha) * math.cos(asymmetric.beta)) ** 2
    q_pm = (math.sin(asymmetric.alpha) * math.sin(asymmetric.beta)) ** 2
    assert s_max(FamilyTag.PP, asymmetric) == pytest.approx(math.acos(-q_pp / (1 - q_pp)))
    assert s_max(FamilyTag.PM, asymmetric) == pytest.approx(math.acos(-q_pm / (1 - q_pm)))
    assert s_max(FamilyTag.MP, asymmetric) == s_max(FamilyTag.PM, asymmetric)


def test_s_max_expansion():
    params = make_params(0.05)
    assert s_max(FamilyTag.PP, params) == pytest.approx(s_max_taylor(0.05), abs=1e-7)


def test_longest_first_arc_comes_from_theta_pi(params):
    top = s_max(FamilyTag.PP, params)
    assert first_switch_of_theta(math.pi, params) == pytest.approx(top, abs=1e-10)
    assert first_switch_equation(math.pi, top, params) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("beta", [math.pi / 8, math.pi / 4])
def test_first_switch_solves_switch_equation(beta):
    params = make_params(0.25, beta)
    scale = 0.5 * math.sin(params.alpha) ** 2
    for theta in np.linspace(math.pi, 1.5 * math.pi, 42)[1:-1]:
        s = first_switch_of_theta(float(theta), params)
        assert 0.0 < s <= s_max(FamilyTag.PP, params) + 1e-10
        residual = scale * first_switch_equation(float(theta), s, params)
        assert residual == pytest.approx(0.0, abs=1e-10)
        # no earlier zero of f on (0, s)
        earlier = np.linspace(0.0, s, 200)[1:-1]
        values = [first_switch_equation(float(theta), float(t), params) for t in earlier]
        assert all(v < 0.0 for v in values)


@pytest.mark.parametrize("family", list(FamilyTag))
def test_v_endpoints_equal_s_max(params, family):
    top = s_max(family, params)
    assert interbang_duration(0.0, family, params) == pytest.approx(top, abs=1e-10)
    assert interbang_duration(top, family, params) == pytest.approx(top, abs=1e-10)


@pytest.mark.parametrize("alpha", [0.1, 0.25])
def test_v_pi4_closed_form_matches_root(alpha):
    params = make_params(alpha)
    for s in _interior_grid(s_max(FamilyTag.PP, params)):
        expected = interbang_duration(float(s), FamilyTag.PP, params)
        assert v_pi4_closed_form(float(s), params) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("beta", [math.pi / 8, math.pi / 4])
@pytest.mark.parametrize("family", list(FamilyTag))
def test_v_general_closed_form_matches_root(beta, family):
    params = make_params(0.25, beta)
    for s in _interior_grid(s_max(family, params)):
        expected = interbang_duration(float(s), family, params)
        assert v_general_closed_form(float(s), family, params) == pytest.approx(expected, abs=1e-8)


def test_v_general_closed_form_endpoints(params):
    top = s_max(FamilyTag.PP, params)
    assert v_general_closed_form(0.0, FamilyTag.PP, params) == pytest.approx(top, abs=1e-9)
    assert v_general_closed_form(top, FamilyTag.PP, params) == pytest.approx(top, abs=1e-9)


def test_v_taylor_small_alpha():
    params = make_params(0.05)
    for s in _interior_grid(s_max(FamilyTag.PP, params)):
        assert v_taylor(float(s), 0.05) == pytest.approx(
            v_pi4_closed_form(float(s), params), abs=1e-6
        )


def test_v_pi4_needs_equal_bounds(asymmetric):
    with pytest.raises(BetaNotQuarterPi):
        v_pi4_closed_form(0.5, asymmetric)


def test_interbang_rejects_long_first_arc(params):
    with pytest.raises(ValueError):
        interbang_duration(s_max(FamilyTag.PP, params) + 1e-3, FamilyTag.PP, params)


@pytest.mark.parametrize("alpha", [0.01, 0.25, 0.7])
def test_theta_of_alpha(alpha):
    theta = theta_of_alpha(alpha)
    ca2 = math.cos(alpha) ** 2
    assert theta < 0.0
    assert math.cos(theta) == pytest.approx((3 * ca2 - 1) / (1 + ca2))


def test_theta_small_alpha_slope():
    assert theta_of_alpha(1e-4) / 1e-4 == pytest.approx(-math.sqrt(2.0), rel=1e-6)


def test_clamped_arccos_guards_closed_forms():
    with pytest.raises(DomainError):
        arccos_clamped(1.0 + 1e-6)
