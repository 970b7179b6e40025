"""
Brute-force checks of the synthesis.

A forward reachable-set sweep over the four bang controls brackets the minimum
time to a target; a structural scan over covector angles checks the bang-bang
pattern of the extremals produced by the adjoint integration.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from .adjoint import extremal_from_theta
from .core import bang_exponential
from .exceptions import BudgetExceeded
from .models import (
    NORTH,
    BlochPoint,
    FamilyTag,
    NormalizedParams,
    OracleResult,
    StructureReport,
    angular_distance,
)
from .switching import s_max

logger = logging.getLogger(__name__)

GAP_TOL = 1e-8
FIRST_SWITCH_TOL = 1e-10


def _cell_keys(points: np.ndarray, h: float) -> np.ndarray:
    # one int64 per cubic cell of side h
    span = int(math.ceil(1.0 / h)) + 1
    width = 2 * span + 1
    cells = np.floor(points / h).astype(np.int64) + span
    return (cells[:, 0] * width + cells[:, 1]) * width + cells[:, 2]


def _prune(points: np.ndarray, h: float) -> np.ndarray:
    # one survivor per cell: the point with the smallest x3
    order = np.argsort(points[:, 2], kind="stable")
    _, first = np.unique(_cell_keys(points[order], h), return_index=True)
    return points[order[np.sort(first)]]


def min_time_brackets(
    targets: Sequence[BlochPoint],
    params: NormalizedParams,
    dt: float,
    eps: float,
    max_steps: int = 20000,
) -> List[OracleResult]:
    """
    Minimum-time brackets for several targets from one reachable-set sweep.

    Starting from the north pole, every step applies the four bang flows for
    ``dt``, checks the targets against all generated points and then keeps one
    point per cubic cell of side eps/4: the one with the smallest x3, i.e. the
    farthest from the north pole. The first step m at which a point lies within
    angular distance ``eps`` of a target gives t_hi = m dt and t_lo = (m - 1) dt.

    Raises:
        ValueError: if dt or eps is not positive
        BudgetExceeded: if some target is not reached within ``max_steps``
    """
    if dt <= 0.0 or eps <= 0.0:
        raise ValueError(f"dt and eps must be positive, got dt={dt!r}, eps={eps!r}")
    goals = np.array([t.as_array() for t in targets])
    rotations = [bang_exponential(tag.signs(), dt, params) for tag in FamilyTag]
    cos_eps = math.cos(eps)
    h = eps / 4.0

    frontier = NORTH.as_array()[None, :]
    hit_step: List[Optional[int]] = [None] * len(goals)
    peak = 1

    def record(step: int, points: np.ndarray) -> None:
        pending = [i for i, s in enumerate(hit_step) if s is None]
        if not pending:
            return
        near = (goals[pending] @ points.T).max(axis=1) >= cos_eps
        for i, reached in zip(pending, near):
            if reached:
                hit_step[i] = step

    record(0, frontier)
    step = 0
    while any(s is None for s in hit_step):
        if step >= max_steps:
            raise BudgetExceeded(
                f"reachable-set sweep exceeded {max_steps} steps",
                {"max_steps": max_steps, "dt": dt, "eps": eps, "frontier": len(frontier)},
            )
        step += 1
        expanded = np.concatenate([frontier @ R.T for R in rotations])
        expanded /= np.linalg.norm(expanded, axis=1)[:, None]
        record(step, expanded)
        frontier = _prune(expanded, h)
        peak = max(peak, len(frontier))
        if step % 100 == 0:
            logger.debug(f"sweep step {step}: frontier {len(frontier)}")

    north = NORTH.as_array()
    results = []
    for goal, hit in zip(goals, hit_step):
        m = hit if hit is not None else step
        results.append(
            OracleResult(
                target=[float(c) for c in goal],
                t_lower=max(0.0, angular_distance(north, goal) - eps),
                t_lo=max(0, m - 1) * dt,
                t_hi=m * dt,
                dt=dt,
                eps=eps,
                frontier_peak=peak,
            )
        )
    logger.info(f"sweep finished after {step} steps, frontier peak {peak}")
    return results


def min_time_bracket(
    target: BlochPoint,
    params: NormalizedParams,
    dt: float,
    eps: float,
    max_steps: int = 20000,
) -> OracleResult:
    return min_time_brackets([target], params, dt, eps, max_steps)[0]


def verify_bb_structure(
    params: NormalizedParams, n_theta: int = 100, horizon: float = 8.0 * math.pi
) -> StructureReport:
    """
    Check the bang-bang pattern of extremals over a uniform covector-angle grid.

    Each extremal must have its first switching no later than s_max of its
    family, alternate the vanishing switching function, keep every interior arc
    at one common duration and every gap in (0, pi].
    """
    if n_theta < 4:
        raise ValueError(f"at least 4 covector angles required, got {n_theta!r}")
    worst_excess = -math.inf
    worst_spread = 0.0
    alternation_failures = 0
    gap_range_failures = 0
    for theta in np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False):
        trace = extremal_from_theta(float(theta), horizon, params)
        if not trace.switch_times:
            continue
        first = trace.schedule.arcs[0].control
        family = FamilyTag.from_signs(first.u1, first.u2)
        worst_excess = max(worst_excess, trace.switch_times[0] - s_max(family, params))
        if any(a == b for a, b in zip(trace.indices, trace.indices[1:])):
            alternation_failures += 1
        interior = trace.interior_gaps()
        if interior:
            worst_spread = max(worst_spread, max(interior) - min(interior))
        if any(g <= 0.0 or g > math.pi for g in trace.gaps()):
            gap_range_failures += 1
    if math.isinf(worst_excess):
        worst_excess = 0.0

    passed = (
        worst_excess <= FIRST_SWITCH_TOL
        and worst_spread <= GAP_TOL
        and alternation_failures == 0
        and gap_range_failures == 0
    )
    logger.info(
        f"structure check over {n_theta} extremals: passed={passed} "
        f"excess={worst_excess:.3e} spread={worst_spread:.3e}"
    )
    return StructureReport(
        passed=passed,
        n_extremals=n_theta,
        worst_first_switch_excess=worst_excess,
        worst_gap_spread=worst_spread,
        alternation_failures=alternation_failures,
        details={
            "alpha": params.alpha,
            "beta": params.beta,
            "horizon": horizon,
            "gap_range_failures": gap_range_failures,
        },
    )
