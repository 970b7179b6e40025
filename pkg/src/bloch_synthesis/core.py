"""
Parameter normalization, SO(3) generators and closed-form bang flows.

The normalized system is x' = (F + u1 G1 + u2 G2) x on the unit sphere. Each
constant control generates a rotation whose axis is read off the skew-symmetric
generator, so every flow is evaluated with Rodrigues' formula.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import AlphaOutOfRange, EmptySchedule, NonPositiveE, NotNormalized
from .models import (
    QUARTER_PI,
    BlochPoint,
    Control,
    ControlSchedule,
    NormalizedParams,
    PhysicalParams,
    Trajectory,
)

logger = logging.getLogger(__name__)

HOPF_TOL = 1e-10


def normalize_params(p: PhysicalParams) -> NormalizedParams:
    """
    Map physical bounds to the normalized angles.

    Args:
        p: Energy half-gap and field bounds

    Returns:
        NormalizedParams with alpha = arctan(sqrt(M1^2+M2^2)/E),
        beta = arctan(M1/M2) and k = 2 sqrt(E^2+M1^2+M2^2)

    Raises:
        NonPositiveE: if E <= 0
        AlphaOutOfRange: if the controls are too strong (alpha >= pi/4)
    """
    if p.E <= 0.0:
        raise NonPositiveE(f"E must be positive, got {p.E!r}", {"E": p.E})
    alpha = math.atan(math.hypot(p.M1, p.M2) / p.E)
    if alpha >= QUARTER_PI:
        raise AlphaOutOfRange(
            f"alpha={alpha:.12g} is not below pi/4", {"alpha": alpha, "E": p.E}
        )
    beta = math.atan2(p.M1, p.M2)
    return NormalizedParams(alpha=alpha, beta=beta, k=p.scale)


def make_params(alpha: float, beta: float = QUARTER_PI, k: float = 1.0) -> NormalizedParams:
    return NormalizedParams(alpha=alpha, beta=beta, k=k)


def rescale_time(t_normalized: float, p: PhysicalParams) -> float:
    """Convert a normalized duration into physical time."""
    return t_normalized / p.scale


def skew(v: Sequence[float]) -> np.ndarray:
    """Skew-symmetric matrix K with K @ x == cross(v, x)."""
    a, b, c = float(v[0]), float(v[1]), float(v[2])
    return np.array([[0.0, -c, b], [c, 0.0, -a], [-b, a, 0.0]])


def unskew(K: np.ndarray) -> np.ndarray:
    return np.array([K[2, 1], K[0, 2], K[1, 0]])


def drift_matrix(params: NormalizedParams, k: float = 1.0) -> np.ndarray:
    return k * math.cos(params.alpha) * skew((0.0, 0.0, 1.0))


def control_matrices(params: NormalizedParams, k: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    sa = math.sin(params.alpha)
    g1 = k * sa * math.sin(params.beta) * skew((1.0, 0.0, 0.0))
    g2 = k * sa * math.cos(params.beta) * skew((0.0, -1.0, 0.0))
    return g1, g2


def generator_axis(u: Tuple[float, float], params: NormalizedParams, k: float = 1.0) -> np.ndarray:
    """Rotation vector of F + u1 G1 + u2 G2."""
    sa, ca = math.sin(params.alpha), math.cos(params.alpha)
    return k * np.array(
        [u[0] * sa * math.sin(params.beta), -u[1] * sa * math.cos(params.beta), ca]
    )


def generator(u: Control, params: NormalizedParams, k: float = 1.0) -> np.ndarray:
    """
    The generator X_{u1,u2} = F + u1 G1 + u2 G2.

    Args:
        u: Control value
        params: Normalized parameters
        k: Time scale; 1 is the normalized system

    Returns:
        3x3 skew-symmetric matrix
    """
    return skew(generator_axis(u.as_tuple(), params, k))


def rotation_matrix(axis: np.ndarray, t: float) -> np.ndarray:
    """
    exp(t * skew(axis)) by Rodrigues' formula.

    The rotation angle is t * |axis|; a zero axis yields the identity.
    """
    speed = float(np.linalg.norm(axis))
    if speed == 0.0 or t == 0.0:
        return np.eye(3)
    K = skew(axis / speed)
    angle = speed * t
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def bang_exponential(u: Tuple[float, float], t: float, params: NormalizedParams) -> np.ndarray:
    return rotation_matrix(generator_axis(u, params), t)


def flow_array(
    x: np.ndarray, u: Tuple[float, float], t: float, params: NormalizedParams
) -> np.ndarray:
    y = bang_exponential(u, t, params) @ x
    return y / np.linalg.norm(y)


def flow(x: BlochPoint, u: Control, t: float, params: NormalizedParams) -> BlochPoint:
    """
    Evolve ``x`` for time ``t`` under the constant control ``u``.

    Negative times apply the inverse rotation.
    """
    return BlochPoint.from_array(flow_array(x.as_array(), u.as_tuple(), t, params))


def simulate(
    x0: BlochPoint, sched: ControlSchedule, params: NormalizedParams, dt: float
) -> Trajectory:
    """
    Sample a schedule arc by arc with closed-form flows.

    Inside each arc the samples are spaced by ``dt``; every arc end is sampled
    exactly, so switching instants carry no step error.

    Raises:
        EmptySchedule: if the schedule has no arcs at all
        ValueError: if dt is not positive
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not sched.arcs:
        raise EmptySchedule("schedule has no arcs")

    first = sched.arcs[0].control
    times: List[float] = [0.0]
    controls: List[Tuple[float, float]] = [first.as_tuple()]
    states: List[np.ndarray] = [x0.as_array()]

    t0 = 0.0
    x = x0.as_array()
    for arc in sched.arcs:
        if arc.duration <= 0.0:
            continue
        u = arc.control.as_tuple()
        axis = generator_axis(u, params)
        n_inner = int(math.ceil(arc.duration / dt - 1e-12))
        for j in range(1, n_inner):
            y = rotation_matrix(axis, j * dt) @ x
            times.append(t0 + j * dt)
            controls.append(u)
            states.append(y / np.linalg.norm(y))
        x = rotation_matrix(axis, arc.duration) @ x
        x = x / np.linalg.norm(x)
        t0 += arc.duration
        times.append(t0)
        controls.append(u)
        states.append(x)

    logger.debug(f"simulated {len(sched.arcs)} arcs into {len(times)} samples")
    return Trajectory(
        times=np.array(times), controls=np.array(controls), states=np.array(states)
    )


def schedule_endpoint(
    x0: np.ndarray, sched: ControlSchedule, params: NormalizedParams
) -> np.ndarray:
    """Final state of a schedule without intermediate sampling."""
    x = np.asarray(x0, dtype=float)
    for arc in sched.arcs:
        if arc.duration > 0.0:
            x = flow_array(x, arc.control.as_tuple(), arc.duration, params)
    return x


def hopf_project(psi: Tuple[complex, complex]) -> BlochPoint:
    """
    Project a normalized two-level state onto the Bloch sphere.

    The convention x3 = |psi1|^2 - |psi2|^2 sends the first basis state to the
    north pole.

    Raises:
        NotNormalized: if |psi1|^2 + |psi2|^2 differs from 1 by more than 1e-10
    """
    a, b = complex(psi[0]), complex(psi[1])
    weight = abs(a) ** 2 + abs(b) ** 2
    if abs(weight - 1.0) > HOPF_TOL:
        raise NotNormalized(f"state norm^2 is {weight!r}", {"norm2": weight})
    cross = a * b.conjugate()
    return BlochPoint.from_array(
        [2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2]
    )
