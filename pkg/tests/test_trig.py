import math

import numpy as np
import pytest

from bloch_synthesis.core import rotation_matrix
from bloch_synthesis.exceptions import DomainError
from bloch_synthesis.trig import (
    arccos_clamped,
    bracketed_roots,
    first_crossing,
    first_reach,
    peak_on_interval,
    rotation_dot_form,
    sign_change_roots,
)


def test_sign_change_roots_of_sine():
    roots = sign_change_roots(0.0, 1.0, 0.0)
    assert roots == pytest.approx([0.0, math.pi], abs=1e-15)


def test_tangential_zero_is_not_a_crossing():
    assert sign_change_roots(1.0, 0.0, 1.0) == []
    assert sign_change_roots(0.0, 0.0, 0.5) == []


def test_first_crossing_skips_origin():
    assert first_crossing(0.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert first_crossing(0.0, 1.0, 0.0, skip_origin=True) == pytest.approx(math.pi)


def test_bracketed_roots_of_cosine():
    roots = bracketed_roots(math.cos, 0.0, 2.0 * math.pi, samples=64)
    assert roots == pytest.approx([math.pi / 2, 1.5 * math.pi], abs=1e-13)


def test_arccos_clamped():
    assert arccos_clamped(1.0 + 1e-12) == 0.0
    assert arccos_clamped(-1.0 - 1e-12) == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        arccos_clamped(1.1)


def test_rotation_dot_form_matches_rotation():
    rng = np.random.default_rng(3)
    for _ in range(10):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        gain, x0 = rng.normal(size=3), rng.normal(size=3)
        A, B, C = rotation_dot_form(gain, axis, x0)
        for t in np.linspace(0.0, 6.0, 7):
            direct = float(gain @ rotation_matrix(axis, float(t)) @ x0)
            assert A * math.cos(t) + B * math.sin(t) + C == pytest.approx(direct, abs=1e-12)


def test_peak_on_interval():
    t, value = peak_on_interval(0.0, 1.0, 0.0, math.pi)
    assert t == pytest.approx(math.pi / 2)
    assert value == pytest.approx(1.0)
    t, value = peak_on_interval(0.0, 1.0, 0.0, 1.0)
    assert t == 1.0
    assert value == pytest.approx(math.sin(1.0))


def test_first_reach():
    assert first_reach(1.0, 0.0, 0.0, 1.0) == 0.0
    assert first_reach(-1.0, 0.0, 0.5, math.pi) == pytest.approx(math.pi / 3)
    assert first_reach(-1.0, 0.0, 0.5, 0.5) is None
