"""
Switching functions of normal extremals.

Along a bang arc the vector (phi0, phi1, phi2) obeys phi' = P(u) phi. For bang
controls P(u) = Q J Q^{-1} with J the unit rotation generator about the first
axis, so the propagation and the zero crossings are available in closed form.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from .exceptions import DegenerateCovector, NoSwitching
from .models import Control, ControlSchedule, FamilyTag, NormalizedParams, SwitchingState
from .trig import TWO_PI, first_crossing

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-12

Bang = Tuple[int, int]


class ExtremalTrace(BaseModel):
    """A bang-bang extremal generated from an initial covector angle."""

    model_config = ConfigDict(frozen=True)

    theta: float
    initial: SwitchingState
    schedule: ControlSchedule
    switch_times: List[float]
    indices: List[int]
    states: List[SwitchingState]

    def gaps(self) -> List[float]:
        times = [0.0] + self.switch_times
        return [b - a for a, b in zip(times, times[1:])]

    def interior_gaps(self) -> List[float]:
        return self.gaps()[1:]


def coefficients(params: NormalizedParams) -> Tuple[float, float, float]:
    """The constants a1, a2, a3 of the switching dynamics; a1a2 + a1a3 + a2a3 = 1."""
    ca = math.cos(params.alpha)
    ta = math.tan(params.alpha)
    sb, cb = math.sin(params.beta), math.cos(params.beta)
    return ca * cb / sb, ca * sb / cb, ca * ta * ta * sb * cb


def initial_switching(theta: float, params: NormalizedParams) -> SwitchingState:
    """
    Switching functions at the north pole for lambda(0) = (cos t, sin t, 0).

    lambda0 is fixed by the Hamiltonian identity phi0 + |phi1| + |phi2| + lambda0 = 0.
    """
    sa = math.sin(params.alpha)
    phi1 = -sa * math.sin(params.beta) * math.sin(theta)
    phi2 = -sa * math.cos(params.beta) * math.cos(theta)
    return SwitchingState(phi0=0.0, phi1=phi1, phi2=phi2, lambda0=-(abs(phi1) + abs(phi2)))


def p_matrix(u: Control, params: NormalizedParams) -> np.ndarray:
    a1, a2, a3 = coefficients(params)
    u1, u2 = u.u1, u.u2
    return np.array(
        [
            [0.0, a1 * u2, -a2 * u1],
            [-a3 * u2, 0.0, a2],
            [a3 * u1, -a1, 0.0],
        ]
    )


def q_matrices(u: Bang, params: NormalizedParams) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenbasis Q of P(u) and its inverse for a bang control."""
    a1, a2, a3 = coefficients(params)
    u1, u2 = u
    d = a1 + a3
    Q = np.array(
        [
            [a2 / (u2 * a3), -u2 * a1 / d, -u1 / d],
            [u1 * a2 / (u2 * a1), -u1 * u2 * a3 / d, 1.0 / d],
            [1.0, 1.0, 0.0],
        ]
    )
    Q_inv = np.array(
        [
            [u2 * a1 * a3, u1 * u2 * a1 * a3, a1 * a3],
            [-u2 * a1 * a3, -u1 * u2 * a1 * a3, a2 * d],
            [-u1 * a3, a1, 0.0],
        ]
    )
    return Q, Q_inv


def _block_rotation(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _as_bang(u: object) -> Bang:
    if isinstance(u, Control):
        if not u.is_bang:
            raise ValueError(f"bang control required, got {u.as_tuple()}")
        return (int(u.u1), int(u.u2))
    u1, u2 = u  # type: ignore[misc]
    return (1 if u1 > 0 else -1, 1 if u2 > 0 else -1)


def propagate_switching(
    s0: SwitchingState, u: object, t: float, params: NormalizedParams
) -> SwitchingState:
    """
    Exact propagation phi(t) = Q R(t) Q^{-1} phi(0) along a bang arc.

    Args:
        s0: Switching state at the start of the arc
        u: Bang control, a Control or a pair of signs
        t: Elapsed time
        params: Normalized parameters

    Returns:
        SwitchingState at time t; lambda0 is carried over unchanged
    """
    Q, Q_inv = q_matrices(_as_bang(u), params)
    phi = Q @ _block_rotation(t) @ Q_inv @ s0.as_array()
    return s0.with_phi(phi)


def switching_trig_coefficients(
    s0: SwitchingState, u: object, params: NormalizedParams
) -> np.ndarray:
    """
    Rows (A, B, C) with phi_i(t) = A cos t + B sin t + C for i = 0, 1, 2.
    """
    Q, Q_inv = q_matrices(_as_bang(u), params)
    c1, c2, c3 = Q_inv @ s0.as_array()
    v1, v2, v3 = Q[:, 0], Q[:, 1], Q[:, 2]
    A = c2 * v2 + c3 * v3
    B = -c3 * v2 + c2 * v3
    C = c1 * v1
    return np.stack([A, B, C], axis=1)


def costate_momentum(state: SwitchingState, params: NormalizedParams) -> np.ndarray:
    """
    The vector m = x cross lambda recovered from the switching functions.

    It rotates rigidly with the active bang axis and has unit norm on every
    normal extremal issued from the north pole.
    """
    sa, ca = math.sin(params.alpha), math.cos(params.alpha)
    return np.array(
        [
            state.phi1 / (sa * math.sin(params.beta)),
            -state.phi2 / (sa * math.cos(params.beta)),
            state.phi0 / ca,
        ]
    )


def ellipsoid_value(state: SwitchingState, params: NormalizedParams) -> float:
    return float(np.dot(costate_momentum(state, params), costate_momentum(state, params)))


def non_connection_margin(theta: float, params: NormalizedParams) -> float:
    """Delta - sin^2(alpha) sin^2(beta), with Delta = 1 - lambda0^2 - sin^2(alpha) cos^2(beta)."""
    lam0 = initial_switching(theta, params).lambda0
    sa2 = math.sin(params.alpha) ** 2
    delta = 1.0 - lam0**2 - sa2 * math.cos(params.beta) ** 2
    return delta - sa2 * math.sin(params.beta) ** 2


def _zero_scale(params: NormalizedParams) -> float:
    return ZERO_TOL * math.sin(params.alpha)


def initial_control(theta: float, params: NormalizedParams) -> Bang:
    """
    Bang control selected at t = 0+.

    A switching function that vanishes at t = 0 takes the sign of its
    derivative, which only involves the other component of the control.
    """
    state = initial_switching(theta, params)
    tol = _zero_scale(params)
    zero1, zero2 = abs(state.phi1) <= tol, abs(state.phi2) <= tol
    if zero1 and zero2:
        raise DegenerateCovector(
            f"both switching functions vanish at theta={theta!r}", {"theta": theta}
        )
    a1, a2, _ = coefficients(params)
    u1 = 1 if state.phi1 > 0 else -1
    u2 = 1 if state.phi2 > 0 else -1
    if zero1:
        u1 = 1 if a2 * state.phi2 > 0 else -1
    if zero2:
        u2 = 1 if -a1 * state.phi1 > 0 else -1
    return (u1, u2)


def next_switching_time(
    s0: SwitchingState, u: object, params: NormalizedParams
) -> Tuple[float, int]:
    """
    Time until phi1 or phi2 next changes sign along the bang ``u``.

    A function that starts on a zero contributes its other root of the period.

    Returns:
        (dt, index) with index 1 or 2

    Raises:
        NoSwitching: if neither function changes sign within a full period
    """
    rows = switching_trig_coefficients(s0, u, params)
    tol = _zero_scale(params)
    best: Optional[Tuple[float, int]] = None
    for index in (1, 2):
        A, B, C = rows[index]
        start = (s0.phi1, s0.phi2)[index - 1]
        t = first_crossing(A, B, C, skip_origin=abs(start) <= tol)
        if t is None or t <= 0.0:
            continue
        if best is None or t < best[0]:
            best = (t, index)
    if best is None:
        raise NoSwitching(
            "no sign change of phi1 or phi2 along the arc",
            {"phi": s0.as_array().tolist(), "u": list(_as_bang(u))},
        )
    return best


def family_of_theta(theta: float) -> FamilyTag:
    """
    Family whose first-switch parameterization covers ``theta``.

    MM on [0, pi/2], MP on (pi/2, pi), PP on [pi, 3pi/2], PM on (3pi/2, 2pi).
    """
    t = theta % TWO_PI
    if t <= math.pi / 2:
        return FamilyTag.MM
    if t < math.pi:
        return FamilyTag.MP
    if t <= 1.5 * math.pi:
        return FamilyTag.PP
    return FamilyTag.PM


def extremal_from_theta(theta: float, horizon: float, params: NormalizedParams) -> ExtremalTrace:
    """
    Forward-integrate the bang-bang extremal issued from lambda(0) = (cos t, sin t, 0).

    Args:
        theta: Covector angle
        horizon: Total duration
        params: Normalized parameters

    Returns:
        ExtremalTrace with the schedule, every switching time, the vanishing
        index and the switching state at each switching
    """
    if horizon <= 0.0:
        raise ValueError(f"horizon must be positive, got {horizon!r}")
    initial = initial_switching(theta, params)
    u = initial_control(theta, params)

    state = initial
    t = 0.0
    pairs: List[Tuple[Tuple[float, float], float]] = []
    switch_times: List[float] = []
    indices: List[int] = []
    states: List[SwitchingState] = []
    while True:
        dt, index = next_switching_time(state, u, params)
        if t + dt >= horizon:
            pairs.append(((float(u[0]), float(u[1])), horizon - t))
            break
        state = propagate_switching(state, u, dt, params)
        phi = state.as_array()
        phi[index] = 0.0
        state = state.with_phi(phi)
        pairs.append(((float(u[0]), float(u[1])), dt))
        t += dt
        switch_times.append(t)
        indices.append(index)
        states.append(state)
        u = (-u[0], u[1]) if index == 1 else (u[0], -u[1])

    logger.debug(f"extremal theta={theta:.6f}: {len(switch_times)} switchings up to {horizon}")
    return ExtremalTrace(
        theta=theta,
        initial=initial,
        schedule=ControlSchedule.from_pairs(pairs),
        switch_times=switch_times,
        indices=indices,
        states=states,
    )


def switching_trace_rows(
    theta: float, horizon: float, params: NormalizedParams, dt: float
) -> List[Tuple[float, float, float, float, str]]:
    """
    Sampled switching functions along an extremal, for the switching-trace CSV.

    Rows are (t, phi0, phi1, phi2, event) with event none, swi1 or swi2.
    """
    trace = extremal_from_theta(theta, horizon, params)
    rows: List[Tuple[float, float, float, float, str]] = []
    state = trace.initial
    t0 = 0.0
    ends = trace.switch_times + [horizon]
    events = [f"swi{i}" for i in trace.indices] + ["none"]
    rows.append((0.0, state.phi0, state.phi1, state.phi2, "none"))
    for arc, t_end, event in zip(trace.schedule.arcs, ends, events):
        u = arc.control
        n_inner = int(math.ceil(arc.duration / dt - 1e-12))
        for j in range(1, n_inner):
            inner = propagate_switching(state, u, j * dt, params)
            rows.append((t0 + j * dt, inner.phi0, inner.phi1, inner.phi2, "none"))
        state = propagate_switching(state, u, arc.duration, params)
        rows.append((t_end, state.phi0, state.phi1, state.phi2, event))
        t0 = t_end
    return rows
