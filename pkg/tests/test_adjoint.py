import math

import numpy as np
import pytest

from bloch_synthesis.adjoint import (
    coefficients,
    costate_momentum,
    ellipsoid_value,
    extremal_from_theta,
    family_of_theta,
    initial_control,
    initial_switching,
    non_connection_margin,
    p_matrix,
    propagate_switching,
    switching_trace_rows,
)
from bloch_synthesis.core import generator_axis, make_params, rotation_matrix
from bloch_synthesis.models import Control, FamilyTag
from bloch_synthesis.switching import first_switch_of_theta, interbang_duration

BANGS = [(1, 1), (1, -1), (-1, -1), (-1, 1)]


@pytest.mark.parametrize("alpha", [0.05, 0.3, 0.7])
@pytest.mark.parametrize("beta", [0.2, math.pi / 4, 1.3])
def test_coefficient_identity(alpha, beta):
    a1, a2, a3 = coefficients(make_params(alpha, beta))
    assert a1 * a2 + a1 * a3 + a2 * a3 == pytest.approx(1.0, abs=1e-12)


def test_initial_state_is_normal(params):
    for theta in np.linspace(0.0, 2.0 * math.pi, 13):
        state = initial_switching(float(theta), params)
        assert state.phi0 == 0.0
        assert state.hamiltonian() == pytest.approx(0.0, abs=1e-15)
        assert ellipsoid_value(state, params) == pytest.approx(1.0, abs=1e-12)
        assert non_connection_margin(float(theta), params) > 0.0


@pytest.mark.parametrize("u", BANGS)
def test_switching_follows_rigid_rotation(asymmetric, u):
    start = initial_switching(0.7, asymmetric)
    m0 = costate_momentum(start, asymmetric)
    axis = generator_axis(u, asymmetric)
    for t in (0.3, 1.7, 5.0):
        moved = costate_momentum(propagate_switching(start, u, t, asymmetric), asymmetric)
        np.testing.assert_allclose(moved, rotation_matrix(axis, t) @ m0, atol=1e-12)


def test_propagation_solves_linear_system(params):
    # finite-difference derivative against phi' = P(u) phi
    start = initial_switching(2.0, params)
    u = Control(u1=1.0, u2=-1.0)
    h = 1e-6
    ahead = propagate_switching(start, u, 0.5 + h, params).as_array()
    behind = propagate_switching(start, u, 0.5 - h, params).as_array()
    here = propagate_switching(start, u, 0.5, params).as_array()
    np.testing.assert_allclose((ahead - behind) / (2 * h), p_matrix(u, params) @ here, atol=1e-8)


def test_propagation_rejects_non_bang(params):
    with pytest.raises(ValueError):
        propagate_switching(initial_switching(1.0, params), Control(u1=0.5, u2=1.0), 1.0, params)


def test_family_of_theta_quadrants():
    assert family_of_theta(0.2) is FamilyTag.MM
    assert family_of_theta(2.0) is FamilyTag.MP
    assert family_of_theta(3.5) is FamilyTag.PP
    assert family_of_theta(5.5) is FamilyTag.PM
    assert family_of_theta(3.5 + 2 * math.pi) is FamilyTag.PP


def test_initial_control_matches_quadrant(params):
    for theta in (0.0, 0.4, 2.0, 3.5, 5.5):
        assert FamilyTag.from_signs(*initial_control(theta, params)) is family_of_theta(theta)


@pytest.mark.parametrize("theta", [0.4, 2.2, 3.6, 5.1])
def test_extremal_is_regular_bang_bang(params, theta):
    trace = extremal_from_theta(theta, 4.0 * math.pi, params)
    assert len(trace.switch_times) >= 5
    assert all(a != b for a, b in zip(trace.indices, trace.indices[1:]))
    interior = trace.interior_gaps()
    assert max(interior) - min(interior) < 1e-9
    family = family_of_theta(theta)
    s = trace.switch_times[0]
    assert s == pytest.approx(first_switch_of_theta(theta, params), abs=1e-9)
    assert interior[0] == pytest.approx(interbang_duration(s, family, params), abs=1e-8)
    assert trace.schedule.total_duration == pytest.approx(4.0 * math.pi)


def test_extremal_states_stay_on_level_sets(asymmetric):
    trace = extremal_from_theta(1.1, 6.0 * math.pi, asymmetric)
    for state in trace.states:
        assert state.hamiltonian() == pytest.approx(0.0, abs=1e-10)
        assert ellipsoid_value(state, asymmetric) == pytest.approx(1.0, abs=1e-10)


def test_extremal_rejects_non_positive_horizon(params):
    with pytest.raises(ValueError):
        extremal_from_theta(1.0, 0.0, params)


def test_switching_trace_rows(params):
    trace = extremal_from_theta(3.6, 10.0, params)
    rows = switching_trace_rows(3.6, 10.0, params, dt=0.1)
    assert rows[0][0] == 0.0
    assert rows[-1][0] == pytest.approx(10.0)
    events = [row for row in rows if row[4] != "none"]
    assert [row[0] for row in events] == pytest.approx(trace.switch_times)
    for row, index in zip(events, trace.indices):
        assert row[4] == f"swi{index}"
        assert abs(row[1 + index]) < 1e-10
