"""
Simple spin-flip strategies for equal control bounds.

S1 repeats the saturated four-arc cycle with arcs of pi/2; S2 lowers the
amplitude slightly so that an integer number of cycles lands exactly on the
south pole. Both are compared with the continuous circularly polarized field.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from .core import bang_exponential, make_params, schedule_endpoint
from .exceptions import InvalidArguments, SolveFailed
from .models import (
    NORTH,
    SOUTH,
    BlochPoint,
    ControlSchedule,
    FamilyTag,
    PhysicalParams,
    StrategyReport,
    angular_distance,
)
from .switching import s_max, theta_of_alpha

logger = logging.getLogger(__name__)

S1_ARC = math.pi / 2
BISECT_XTOL = 1e-14


class CircleLaw(BaseModel):
    """Circularly polarized field Omega1 = M sin(w t + phase), Omega2 = M cos(w t + phase)."""

    model_config = ConfigDict(frozen=True)

    E: float
    M: float
    omega_r: float
    phase: float = 0.0
    transfer_time: float

    def field(self, t: float) -> Tuple[float, float]:
        angle = self.omega_r * t + self.phase
        return self.M * math.sin(angle), self.M * math.cos(angle)


def s1_cycle_order(start: FamilyTag = FamilyTag.PM) -> List[FamilyTag]:
    """The four controls of one S1 cycle beginning with ``start``."""
    order = [start]
    for _ in range(3):
        order.append(order[-1].next_in_cycle())
    return order


def s1_cycles(alpha: float) -> int:
    return math.ceil(math.pi / (4.0 * math.sqrt(2.0) * alpha))


def s1_predicted_miss(alpha: float) -> float:
    """
    Leading-order S1 miss angle.

    n cycles turn N about x1 by n 4 sqrt(2) alpha, overshooting the south pole
    by n 4 sqrt(2) alpha - pi; the cycle axis is tilted off x1 by about
    alpha / sqrt(2). Both offsets combine in quadrature, up to O(alpha^2).
    """
    overshoot = s1_cycles(alpha) * 4.0 * math.sqrt(2.0) * alpha - math.pi
    return math.hypot(overshoot, alpha / math.sqrt(2.0))


def s1_cycle_matrix(alpha: float, start: FamilyTag = FamilyTag.PM) -> np.ndarray:
    """Rotation produced by one S1 cycle; close to a rotation about x1 by 4 sqrt(2) alpha."""
    params = make_params(alpha)
    M = np.eye(3)
    for tag in s1_cycle_order(start):
        M = bang_exponential(tag.signs(), S1_ARC, params) @ M
    return M


def _report(
    strategy: str,
    alpha: float,
    n: int,
    schedule: ControlSchedule,
    arc: float,
    gamma: Optional[float],
    scale: Optional[float],
) -> StrategyReport:
    params = make_params(alpha)
    final = schedule_endpoint(NORTH.as_array(), schedule, params)
    total = schedule.total_duration
    miss = angular_distance(final, SOUTH.as_array())
    logger.info(f"{strategy}: alpha={alpha:g} n={n} T={total:.12g} miss={miss:.3e}")
    return StrategyReport(
        strategy=strategy,
        alpha=alpha,
        n=n,
        gamma=gamma,
        arc_duration=arc,
        transfer_time_normalized=total,
        transfer_time_physical=None if scale is None else total / scale,
        final_state=[float(c) for c in final],
        miss_angle=miss,
        schedule=schedule,
    )


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < math.pi / 4:
        raise InvalidArguments(f"alpha={alpha!r} outside (0, pi/4)", {"alpha": alpha})


def s1_schedule(
    alpha: float, start: FamilyTag = FamilyTag.PM, scale: Optional[float] = None
) -> StrategyReport:
    """
    n saturated cycles of pi/2 arcs, n = ceil(pi / (4 sqrt(2) alpha)).

    The south pole is missed by an angle of order alpha, see ``s1_predicted_miss``;
    the overshoot alone can approach 4 sqrt(2) alpha.

    Args:
        alpha: Normalized control strength
        start: First control of the cycle
        scale: Optional time scale k for the physical transfer time
    """
    _check_alpha(alpha)
    n = s1_cycles(alpha)
    order = s1_cycle_order(start)
    pairs = [((float(tag.signs()[0]), float(tag.signs()[1])), S1_ARC) for tag in order] * n
    return _report("s1", alpha, n, ControlSchedule.from_pairs(pairs), S1_ARC, None, scale)


def reduced_alpha(alpha: float, n: int) -> float:
    """
    The strength alpha_bar <= alpha with 4 n |theta(alpha_bar)| = pi.

    Raises:
        SolveFailed: if the bisection bracket does not change sign
    """

    def excess(a: float) -> float:
        return 4.0 * n * abs(theta_of_alpha(a)) - math.pi

    hi = excess(alpha)
    if hi == 0.0:
        return alpha
    lo_point = alpha * 1e-9
    lo = excess(lo_point)
    if lo * hi > 0.0:
        raise SolveFailed(
            "reduced strength is not bracketed", {"alpha": alpha, "n": n, "lo": lo, "hi": hi}
        )
    return float(bisect(excess, lo_point, alpha, xtol=BISECT_XTOL))


def s2_schedule(alpha: float, scale: Optional[float] = None) -> StrategyReport:
    """
    Exact spin flip with n = ceil(pi / (4 |theta(alpha)|)) de-rated cycles.

    The amplitude gamma = tan(alpha_bar) / tan(alpha) turns each bang into the
    bang of the system with strength alpha_bar; arcs last s_max(alpha_bar) in
    that system's clock, so every cycle is the exact rotation by 4 theta(alpha_bar).

    Raises:
        SolveFailed: if alpha_bar cannot be bracketed
    """
    _check_alpha(alpha)
    n = math.ceil(math.pi / (4.0 * abs(theta_of_alpha(alpha))))
    a_bar = reduced_alpha(alpha, n)
    gamma = math.tan(a_bar) / math.tan(alpha)
    arc = s_max(FamilyTag.PP, make_params(a_bar)) * math.cos(a_bar) / math.cos(alpha)
    pairs = []
    for tag in s1_cycle_order(FamilyTag.PM):
        u1, u2 = tag.signs()
        pairs.append(((gamma * u1, gamma * u2), arc))
    report = _report("s2", alpha, n, ControlSchedule.from_pairs(pairs * n), arc, gamma, scale)
    logger.debug(f"s2: alpha_bar={a_bar:.15g} gamma={gamma:.15g}")
    return report


def circle_optimal(p: PhysicalParams, phase: float = 0.0) -> CircleLaw:
    """
    Resonant circularly polarized field for equal bounds M and its flip time pi / (2M).

    Raises:
        InvalidArguments: if the two bounds differ
    """
    if not math.isclose(p.M1, p.M2, rel_tol=1e-12):
        raise InvalidArguments("circle law needs M1 == M2", {"M1": p.M1, "M2": p.M2})
    return CircleLaw(
        E=p.E, M=p.M1, omega_r=2.0 * p.E, phase=phase, transfer_time=math.pi / (2.0 * p.M1)
    )


def simulate_circle(p: PhysicalParams, phase: float = 0.0, rtol: float = 1e-10) -> BlochPoint:
    """Integrate the Bloch equation under the circle law from the north pole to its flip time."""
    law = circle_optimal(p, phase)

    def rhs(t: float, x: np.ndarray) -> np.ndarray:
        o1, o2 = law.field(t)
        return np.cross(np.array([2.0 * o1, -2.0 * o2, 2.0 * law.E]), x)

    sol = solve_ivp(
        rhs,
        (0.0, law.transfer_time),
        NORTH.as_array(),
        method="DOP853",
        rtol=rtol,
        atol=rtol * 1e-2,
    )
    return BlochPoint.from_array(sol.y[:, -1])


def compare(alpha: float, strategy: str = "s1") -> float:
    """
    Ratio of the strategy's physical transfer time to the circle-law time.

    Uses E = 1 and equal bounds M = tan(alpha) / sqrt(2).
    """
    _check_alpha(alpha)
    E = 1.0
    M = math.tan(alpha) / math.sqrt(2.0)
    p = PhysicalParams(E=E, M1=M, M2=M)
    if strategy == "s1":
        report = s1_schedule(alpha, scale=p.scale)
    elif strategy == "s2":
        report = s2_schedule(alpha, scale=p.scale)
    else:
        raise InvalidArguments(f"unknown strategy {strategy!r}", {"strategy": strategy})
    t_c = circle_optimal(p).transfer_time
    return report.transfer_time_normalized / p.scale / t_c
