"""
Property suites behind the ``verify`` command.

Each check measures a worst-case deviation against a limit; a suite passes
when every check does. Randomized checks draw from ``numpy.random.default_rng(seed)``.
"""

import logging
import math
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .adjoint import (
    ellipsoid_value,
    extremal_from_theta,
    initial_switching,
    non_connection_margin,
    switching_trace_rows,
)
from .core import bang_exponential, generator_axis, make_params, schedule_endpoint
from .exceptions import DegenerateFields, InvalidArguments
from .models import (
    NORTH,
    SOUTH,
    CheckResult,
    ControlSchedule,
    FamilyTag,
    SuiteReport,
    angular_distance,
)
from .oracle import verify_bb_structure
from .suboptimal import s1_predicted_miss, s1_schedule, s2_schedule
from .switching import (
    first_switch_equation,
    first_switch_of_theta,
    interbang_duration,
    s_max,
    theta_of_alpha,
    v_general_closed_form,
    v_taylor,
)
from .synthesis import (
    extremal_front,
    mbar,
    mbar_taylor,
    refraction_test,
    snake_separation,
    spin_flip_time,
    switching_curve,
    x1_rotation,
)

logger = logging.getLogger(__name__)

QUARTER = math.pi / 4
EIGHTH = math.pi / 8


def _check(name: str, worst: float, limit: float) -> CheckResult:
    return CheckResult(name=name, passed=bool(worst <= limit), worst=float(worst), limit=limit)


# invariants


def conserved_quantities(rng: np.random.Generator) -> List[CheckResult]:
    worst_h = 0.0
    worst_e = 0.0
    for _ in range(100):
        alpha = float(rng.choice([0.1, 0.25, 0.5]))
        params = make_params(alpha, float(rng.choice([EIGHTH, QUARTER])))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        start = initial_switching(theta, params)
        rows = switching_trace_rows(theta, 8.0 * math.pi, params, 0.25)
        for _, phi0, phi1, phi2, _event in rows:
            state = start.with_phi(np.array([phi0, phi1, phi2]))
            worst_h = max(worst_h, abs(state.hamiltonian()))
            worst_e = max(worst_e, abs(ellipsoid_value(state, params) - 1.0))
    return [
        _check("hamiltonian_identity", worst_h, 1e-9),
        _check("ellipsoid_identity", worst_e, 1e-9),
    ]


def flows_match_integrator(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    tags = list(FamilyTag)
    for _ in range(10):
        params = make_params(float(rng.uniform(0.05, 0.7)), float(rng.uniform(0.2, 1.3)))
        pairs = []
        for _ in range(6):
            tag = tags[int(rng.integers(0, 4))]
            u1, u2 = tag.signs()
            pairs.append(((float(u1), float(u2)), float(rng.uniform(0.1, 2.0))))
        schedule = ControlSchedule.from_pairs(pairs)
        x = NORTH.as_array()
        for arc in schedule.arcs:
            axis = generator_axis(arc.control.as_tuple(), params)
            sol = solve_ivp(
                lambda _t, y, w=axis: np.cross(w, y),
                (0.0, arc.duration),
                x,
                method="DOP853",
                rtol=1e-12,
                atol=1e-14,
            )
            x = sol.y[:, -1]
        closed_form = schedule_endpoint(NORTH.as_array(), schedule, params)
        worst = max(worst, float(np.max(np.abs(x - closed_form))))
    return [_check("flow_matches_integrator", worst, 1e-9)]


def normal_start(rng: np.random.Generator) -> List[CheckResult]:
    worst_lam = -math.inf
    worst_margin = -math.inf
    for alpha in (0.1, 0.25, 0.5):
        for beta in (EIGHTH, QUARTER):
            params = make_params(alpha, beta)
            for theta in np.linspace(0.0, 2.0 * math.pi, 360, endpoint=False):
                worst_lam = max(worst_lam, initial_switching(float(theta), params).lambda0)
                worst_margin = max(worst_margin, -non_connection_margin(float(theta), params))
    return [
        CheckResult(name="lambda0_negative", passed=worst_lam < 0.0, worst=worst_lam, limit=0.0),
        CheckResult(
            name="non_connection_margin", passed=worst_margin < 0.0, worst=worst_margin, limit=0.0
        ),
    ]


def bang_bang_structure(rng: np.random.Generator) -> List[CheckResult]:
    out = []
    for beta, label in ((QUARTER, "pi4"), (EIGHTH, "pi8")):
        report = verify_bb_structure(make_params(0.25, beta), n_theta=100, horizon=8.0 * math.pi)
        worst = max(report.worst_gap_spread, report.worst_first_switch_excess, 0.0)
        if report.alternation_failures or report.details.get("gap_range_failures"):
            worst = math.inf
        name = f"bang_bang_structure_{label}"
        out.append(CheckResult(name=name, passed=report.passed, worst=worst, limit=1e-8))
    return out


# switching


def s_max_exactness(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    for alpha in (0.1, 0.25, 0.5):
        for beta in (EIGHTH, QUARTER):
            params = make_params(alpha, beta)
            gap = first_switch_of_theta(math.pi, params) - s_max(FamilyTag.PP, params)
            worst = max(worst, abs(gap))
    reference = abs(s_max(FamilyTag.PP, make_params(0.25)) - 1.6023721)
    return [
        _check("first_switch_at_pi", worst, 1e-10),
        _check("s_max_reference_value", reference, 1e-6),
    ]


def first_switch_residual(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    for alpha in (0.1, 0.25):
        for beta in (EIGHTH, QUARTER):
            params = make_params(alpha, beta)
            scale = 0.5 * math.sin(alpha) ** 2
            # open (1,1) quadrant
            for theta in np.linspace(math.pi, 1.5 * math.pi, 52)[1:-1]:
                s = first_switch_of_theta(float(theta), params)
                worst = max(worst, scale * abs(first_switch_equation(float(theta), s, params)))
    return [_check("first_switch_equation_residual", worst, 1e-10)]


def v_triple_agreement(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    for alpha in (0.1, 0.25):
        for beta in (EIGHTH, QUARTER):
            params = make_params(alpha, beta)
            for theta in np.linspace(0.0, 2.0 * math.pi, 100, endpoint=False):
                trace = extremal_from_theta(float(theta), 4.0 * math.pi, params)
                gaps = trace.gaps()
                if len(gaps) < 2:
                    continue
                first = trace.schedule.arcs[0].control
                family = FamilyTag.from_signs(first.u1, first.u2)
                s = min(gaps[0], s_max(family, params))
                by_root = interbang_duration(s, family, params)
                by_formula = v_general_closed_form(s, family, params)
                observed = gaps[1]
                worst = max(
                    worst,
                    abs(by_root - observed),
                    abs(by_formula - observed),
                    abs(by_root - by_formula),
                )
    return [_check("interior_duration_agreement", worst, 1e-8)]


def v_endpoints(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    for alpha in (0.05, 0.1, 0.25, 0.5):
        params = make_params(alpha)
        top = s_max(FamilyTag.PP, params)
        worst = max(
            worst,
            abs(interbang_duration(0.0, FamilyTag.PP, params) - top),
            abs(interbang_duration(top, FamilyTag.PP, params) - top),
        )
    return [_check("v_at_endpoints_equals_s_max", worst, 1e-10)]


# synthesis


def monodromy_identities(rng: np.random.Generator) -> List[CheckResult]:
    worst_m = 0.0
    for alpha in (0.05, 0.1, 0.2, 0.3, 0.4, 0.7):
        params = make_params(alpha)
        top = s_max(FamilyTag.PP, params)
        target = x1_rotation(4.0 * theta_of_alpha(alpha))
        worst_m = max(worst_m, float(np.max(np.abs(mbar(top, FamilyTag.PP, params) - target))))
    worst_x1 = 0.0
    params = make_params(0.1)
    # v(0) = s_max
    step = mbar(0.0, FamilyTag.PP, params, v=s_max(FamilyTag.PP, params))
    x = NORTH.as_array()
    for _ in range(50):
        x = step @ x
        worst_x1 = max(worst_x1, abs(float(x[0])))
    return [
        _check("monodromy_at_s_max", worst_m, 1e-12),
        _check("monodromy_powers_on_x1_circle", worst_x1, 1e-12),
    ]


def _refraction_samples(alpha: float, ks: List[int], n_s: int) -> List[Tuple[bool, bool]]:
    params = make_params(alpha)
    radius = params.exclusion_radius()
    south = SOUTH.as_array()
    grid = np.linspace(0.0, s_max(FamilyTag.PP, params), n_s)
    out = []
    for k in ks:
        for sample in switching_curve(k, grid, FamilyTag.PP, params):
            inside = angular_distance(sample.point.as_array(), south) <= radius
            try:
                verdict = refraction_test(sample, params).locally_optimal
            except DegenerateFields:
                continue
            out.append((inside, verdict))
    return out


def refraction(rng: np.random.Generator) -> List[CheckResult]:
    outside_failures = 0
    for alpha, ks in ((0.25, [2]), (0.1, [2, 3, 4, 5])):
        samples = _refraction_samples(alpha, ks, 60)
        outside_failures += sum(1 for inside, ok in samples if not inside and not ok)
    inside = [ok for is_in, ok in _refraction_samples(0.25, [3], 200) if is_in]
    found = any(not ok for ok in inside)
    return [
        _check("refraction_outside_disk", float(outside_failures), 0.0),
        CheckResult(
            name="refraction_fails_inside_disk", passed=found, worst=float(not found), limit=0.0
        ),
    ]


def front_topology(rng: np.random.Generator) -> List[CheckResult]:
    params = make_params(0.25)
    flip = spin_flip_time(params)
    early = extremal_front(0.5 * flip, 720, params)
    late = extremal_front(1.05 * flip, 720, params)
    return [
        _check("front_simple_at_half_flip", float(len(early.intersections)), 0.0),
        CheckResult(
            name="front_crosses_after_flip",
            passed=late.self_intersecting,
            worst=float(not late.self_intersecting),
            limit=0.0,
        ),
    ]


def four_snakes(rng: np.random.Generator) -> List[CheckResult]:
    report = snake_separation(make_params(0.25))
    return [
        _check("four_snakes_crossings", float(report.crossings), 0.0),
        CheckResult(
            name="four_snakes_separated",
            passed=report.min_distance > 1e-6,
            worst=report.min_distance,
            limit=1e-6,
        ),
    ]


# appendix


def _sup_v_error(alpha: float) -> float:
    params = make_params(alpha)
    return max(
        abs(interbang_duration(float(s), FamilyTag.PP, params) - v_taylor(float(s), alpha))
        for s in np.linspace(0.0, math.pi / 2, 9)
    )


def _sup_mbar_error(alpha: float) -> float:
    params = make_params(alpha)
    return max(
        float(np.max(np.abs(mbar(float(s), FamilyTag.PP, params) - mbar_taylor(float(s), alpha))))
        for s in np.linspace(0.0, math.pi / 2, 9)
    )


def taylor_rates(rng: np.random.Generator) -> List[CheckResult]:
    v_ratio = _sup_v_error(0.1) / _sup_v_error(0.05)
    m_ratio = _sup_mbar_error(0.1) / _sup_mbar_error(0.05)
    return [
        CheckResult(
            name="v_taylor_rate", passed=32.0 <= v_ratio <= 128.0, worst=v_ratio, limit=128.0
        ),
        CheckResult(
            name="mbar_taylor_rate", passed=16.0 <= m_ratio <= 64.0, worst=m_ratio, limit=64.0
        ),
    ]


def printed_exponentials(alpha: float) -> Dict[FamilyTag, np.ndarray]:
    """Closed forms of the four bang rotations over s_max for equal bounds."""
    th = theta_of_alpha(alpha)
    c, s = math.cos(th), math.sin(th)
    return {
        FamilyTag.PP: np.array([[0.0, -1.0, 0.0], [c, 0.0, s], [-s, 0.0, c]]),
        FamilyTag.PM: np.array([[0.0, -c, -s], [1.0, 0.0, 0.0], [0.0, -s, c]]),
        FamilyTag.MM: np.array([[0.0, -1.0, 0.0], [c, 0.0, -s], [s, 0.0, c]]),
        FamilyTag.MP: np.array([[0.0, -c, s], [1.0, 0.0, 0.0], [0.0, s, c]]),
    }


def s_max_exponentials(rng: np.random.Generator) -> List[CheckResult]:
    worst = 0.0
    for alpha in (0.05, 0.25, 0.6):
        params = make_params(alpha)
        top = s_max(FamilyTag.PP, params)
        for tag, printed in printed_exponentials(alpha).items():
            exact = bang_exponential(tag.signs(), top, params)
            worst = max(worst, float(np.max(np.abs(exact - printed))))
    return [_check("bang_rotations_over_s_max", worst, 1e-12)]


def strategies(rng: np.random.Generator) -> List[CheckResult]:
    s2_miss = max(s2_schedule(a).miss_angle for a in (0.05, 0.1, 0.2))
    # deviation from the overshoot model in units of alpha^2
    s1_model = max(
        abs(s1_schedule(a).miss_angle - s1_predicted_miss(a)) / a**2 for a in (0.02, 0.05, 0.1)
    )
    s1_small = s1_schedule(0.01).miss_angle - 0.03
    return [
        _check("s2_exact_arrival", s2_miss, 1e-8),
        _check("s1_miss_matches_overshoot", s1_model, 1.0),
        _check("s1_miss_within_3_alpha_at_0.01", s1_small, 0.0),
    ]


SUITES: Dict[str, List[Callable[[np.random.Generator], List[CheckResult]]]] = {
    "invariants": [conserved_quantities, flows_match_integrator, normal_start, bang_bang_structure],
    "switching": [s_max_exactness, first_switch_residual, v_triple_agreement, v_endpoints],
    "synthesis": [monodromy_identities, refraction, front_topology, four_snakes],
    "appendix": [taylor_rates, s_max_exponentials, strategies],
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    """
    Run one property suite, or every suite for ``all``.

    Raises:
        InvalidArguments: for an unknown suite name
    """
    if name == "all":
        groups = [check for suite in SUITES.values() for check in suite]
    elif name in SUITES:
        groups = SUITES[name]
    else:
        raise InvalidArguments(f"unknown suite {name!r}", {"suites": sorted(SUITES) + ["all"]})
    rng = np.random.default_rng(seed)
    checks: List[CheckResult] = []
    for group in groups:
        results = group(rng)
        for result in results:
            level = logging.INFO if result.passed else logging.WARNING
            logger.log(level, f"{result.name}: worst={result.worst:.3e} limit={result.limit:.1e}")
        checks.extend(results)
    passed = all(c.passed for c in checks)
    logger.info(f"suite {name} (seed {seed}): {'passed' if passed else 'FAILED'}")
    return SuiteReport(suite=name, seed=seed, passed=passed, checks=checks)
