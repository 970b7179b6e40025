"""
Optimal synthesis from the north pole.

Every extremal starts with a bang arc of duration s and then cycles through the
four bang controls with a common arc duration v(s). Four consecutive interior
arcs compose into the monodromy rotation, so points of an extremal and the
switching curves are powers of that rotation applied to the first arc.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from .adjoint import extremal_from_theta
from .core import bang_exponential, generator_axis, rotation_matrix, schedule_endpoint
from .exceptions import (
    BetaNotQuarterPi,
    DegenerateFields,
    NoConvergence,
    TargetInCutLocusNeighborhood,
)
from .models import (
    NORTH,
    SOUTH,
    BlochPoint,
    ControlSchedule,
    ExtremalSpec,
    FamilyTag,
    FrontReport,
    FrontSample,
    LocusCurve,
    NormalizedParams,
    RefractionResult,
    SnakeReport,
    SwitchCurveSample,
    SynthesisResult,
    angular_distance,
)
from .switching import interbang_duration, s_max, theta_of_alpha
from .trig import first_reach, peak_on_interval, rotation_dot_form

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

# refraction verdicts above this are outside the regime the structure results cover
SMALL_ALPHA = 0.3


def x1_rotation(angle: float) -> np.ndarray:
    """Rotation about the x1-axis in the form taken by the symmetric monodromy."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


# Monodromy


def monodromy_for_duration(v: float, family: FamilyTag, params: NormalizedParams) -> np.ndarray:
    """
    Product of the four bang rotations that follow a first arc of ``family``,
    each lasting ``v``; the first applied sits rightmost.
    """
    M = np.eye(3)
    for tag in family.cycle_after():
        M = bang_exponential(tag.signs(), v, params) @ M
    return M


def mbar(
    s: float,
    family: FamilyTag,
    params: NormalizedParams,
    v: Optional[float] = None,
) -> np.ndarray:
    """
    The monodromy rotation of the extremal whose first arc lasts ``s``.

    Args:
        s: First arc duration in [0, s_max]
        family: Initial bang control
        params: Normalized parameters
        v: Interior arc duration when already known

    Returns:
        3x3 rotation matrix
    """
    if v is None:
        v = interbang_duration(s, family, params)
    return monodromy_for_duration(v, family, params)


def mbar_taylor(s: float, alpha: float) -> np.ndarray:
    """Small-alpha expansion of the (1,1)-family monodromy for equal bounds."""
    cs, ss = math.cos(s), math.sin(s)
    f3 = 16.0 * ss - 16.0 * cs * ss - 16.0 + 16.0 * cs
    f4 = 4.0 - 4.0 * cs - 4.0 * ss
    f5 = -70.0 / 3.0 + 58.0 / 3.0 * cs + 64.0 / 3.0 * ss + 4.0 * cs * cs
    f6 = 8.0 * SQRT2 * (-1.0 + cs + ss)
    f7 = 112.0 / 3.0 - 16.0 * cs * ss
    f8 = 2.0 * SQRT2 / 3.0 * (-34.0 + 3.0 * cs + 3.0 * ss)
    f9 = 160.0 / 3.0 - 16.0 * ss - 16.0 * cs
    a, a2, a3, a4 = alpha, alpha**2, alpha**3, alpha**4
    return np.array(
        [
            [1.0 + f3 * a4, f4 * a2 + f5 * a4, f6 * a3],
            [-f4 * a2 - f5 * a4, 1.0 - 16.0 * a2 + f7 * a4, -4.0 * SQRT2 * a - f8 * a3],
            [f6 * a3, 4.0 * SQRT2 * a + f8 * a3, 1.0 - 16.0 * a2 + f9 * a4],
        ]
    )


# Extremals


def extremal_spec(
    t: float,
    family: FamilyTag,
    s: float,
    params: NormalizedParams,
    v: Optional[float] = None,
) -> ExtremalSpec:
    """Locate time ``t`` on the extremal (family, s): completed blocks, arc and leftover."""
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    if v is None:
        v = interbang_duration(s, family, params)
    if t <= s:
        return ExtremalSpec(family=family, s=s, n=0, phase=0, leftover=t, v=v)
    rest = t - s
    q = int(math.floor(rest / v))
    leftover = rest - q * v
    if leftover >= v:
        q += 1
        leftover -= v
    return ExtremalSpec(
        family=family, s=s, n=q // 4, phase=q % 4 + 1, leftover=max(0.0, leftover), v=v
    )


def active_family(spec: ExtremalSpec) -> FamilyTag:
    """Bang control in force at the located time."""
    if spec.phase == 0:
        return spec.family
    return spec.family.cycle_after()[spec.phase - 1]


def spec_point_array(spec: ExtremalSpec, params: NormalizedParams) -> np.ndarray:
    north = NORTH.as_array()
    if spec.phase == 0:
        return bang_exponential(spec.family.signs(), spec.leftover, params) @ north
    x = bang_exponential(spec.family.signs(), spec.s, params) @ north
    if spec.n:
        x = np.linalg.matrix_power(monodromy_for_duration(spec.v, spec.family, params), spec.n) @ x
    cycle = spec.family.cycle_after()
    for tag in cycle[: spec.phase - 1]:
        x = bang_exponential(tag.signs(), spec.v, params) @ x
    x = bang_exponential(cycle[spec.phase - 1].signs(), spec.leftover, params) @ x
    return x / np.linalg.norm(x)


def extremal_point(
    t: float, family: FamilyTag, s: float, params: NormalizedParams
) -> BlochPoint:
    """
    Position at time ``t`` on the extremal whose first arc of ``family`` lasts ``s``.

    Evaluated as the partial block times the n-th monodromy power times the
    first arc applied to the north pole.
    """
    return BlochPoint.from_array(spec_point_array(extremal_spec(t, family, s, params), params))


def extremal_schedule(
    family: FamilyTag,
    s: float,
    total_time: float,
    params: NormalizedParams,
    v: Optional[float] = None,
) -> ControlSchedule:
    """The bang schedule of the extremal (family, s) truncated at ``total_time``."""
    if v is None:
        v = interbang_duration(s, family, params)
    pairs: List[Tuple[Tuple[float, float], float]] = []
    first = min(s, total_time)
    pairs.append((_float_signs(family), first))
    remaining = total_time - first
    cycle = family.cycle_after()
    i = 0
    while remaining > 0.0:
        duration = min(v, remaining)
        pairs.append((_float_signs(cycle[i % 4]), duration))
        remaining -= duration
        i += 1
    return ControlSchedule.from_pairs(pairs)


def _float_signs(tag: FamilyTag) -> Tuple[float, float]:
    u1, u2 = tag.signs()
    return (float(u1), float(u2))


# Switching curves


def _curve_point(k: int, s: float, family: FamilyTag, params: NormalizedParams) -> np.ndarray:
    v = interbang_duration(s, family, params)
    x = bang_exponential(family.signs(), s, params) @ NORTH.as_array()
    if k > 1:
        x = np.linalg.matrix_power(monodromy_for_duration(v, family, params), k - 1) @ x
    return x / np.linalg.norm(x)


def switching_curve(
    k: int,
    s_grid: Sequence[float],
    family: FamilyTag,
    params: NormalizedParams,
    step_fraction: float = 1e-4,
) -> List[SwitchCurveSample]:
    """
    Samples of the k-th switching curve, where extremals switch from ``family``
    to the next control of the cycle.

    Tangents are central differences with step ``step_fraction * s_max``,
    one-sided at the ends of [0, s_max], projected onto the tangent plane.
    """
    if k < 1:
        raise ValueError(f"curve index must be at least 1, got {k!r}")
    top = s_max(family, params)
    h = step_fraction * top
    outgoing = family.next_in_cycle()
    samples: List[SwitchCurveSample] = []
    for raw in s_grid:
        s = min(max(float(raw), 0.0), top)
        lo, hi = max(0.0, s - h), min(top, s + h)
        point = _curve_point(k, s, family, params)
        ahead, behind = _curve_point(k, hi, family, params), _curve_point(k, lo, family, params)
        tangent = (ahead - behind) / (hi - lo)
        tangent = tangent - np.dot(tangent, point) * point
        samples.append(
            SwitchCurveSample(
                k=k,
                s=s,
                point=BlochPoint.from_array(point),
                incoming=family,
                outgoing=outgoing,
                tangent=(float(tangent[0]), float(tangent[1]), float(tangent[2])),
            )
        )
    logger.debug(f"switching curve C{k} of {family.value}: {len(samples)} samples")
    return samples


def refraction_test(
    sample: SwitchCurveSample, params: NormalizedParams, residual_tol: float = 1e-8
) -> RefractionResult:
    """
    Decompose the curve tangent on the incoming and outgoing fields.

    The curve refracts extremals (is locally optimal) when the decomposition is
    exact and the two coefficients have opposite signs.

    Raises:
        DegenerateFields: if the two fields are parallel at the sample point
    """
    p = sample.point.as_array()
    y1 = np.cross(generator_axis(sample.incoming.signs(), params), p)
    y2 = np.cross(generator_axis(sample.outgoing.signs(), params), p)
    scale = float(np.linalg.norm(y1) * np.linalg.norm(y2))
    if scale == 0.0 or np.linalg.norm(np.cross(y1, y2)) <= 1e-12 * scale:
        raise DegenerateFields(
            "incoming and outgoing fields are parallel", {"point": sample.point.as_list()}
        )
    if params.alpha > SMALL_ALPHA:
        logger.warning(f"refraction test at alpha={params.alpha:.4f} beyond the small-alpha regime")
    basis = np.column_stack([y1, y2])
    tangent = np.array(sample.tangent)
    coef, *_ = np.linalg.lstsq(basis, tangent, rcond=None)
    residual = float(np.linalg.norm(basis @ coef - tangent) / max(np.linalg.norm(tangent), 1e-300))
    c1, c2 = float(coef[0]), float(coef[1])
    return RefractionResult(
        c1=c1, c2=c2, residual=residual, locally_optimal=residual <= residual_tol and c1 * c2 < 0.0
    )


# Fronts


def _segment_straddles(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray
) -> np.ndarray:
    # [i, j]: the ends of segment j lie strictly on opposite sides of the great circle of i
    normals = np.cross(a, b)
    return (normals @ c.T) * (normals @ d.T) < 0.0


def _crossing_matrix(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    mutual = _segment_straddles(a, b, c, d) & _segment_straddles(c, d, a, b).T
    same_side = ((a + b) @ (c + d).T) > 0.0
    return mutual & same_side


def find_self_intersections(points: np.ndarray, closed: bool = True) -> List[Tuple[int, int]]:
    """
    Pairs (i, j), i < j, of non-adjacent great-circle segments of a polyline on
    the sphere that cross each other. Segment i joins point i to point i + 1.
    """
    P = np.asarray(points, dtype=float)
    if len(P) < 4:
        return []
    a = P if closed else P[:-1]
    b = np.roll(P, -1, axis=0) if closed else P[1:]
    m = len(a)
    hits = _crossing_matrix(a, b, a, b)
    idx = np.arange(m)
    gap = np.abs(idx[:, None] - idx[None, :])
    adjacent = gap <= 1
    if closed:
        adjacent |= gap == m - 1
    i, j = np.nonzero(np.triu(hits & ~adjacent, 1))
    return [(int(p), int(q)) for p, q in zip(i, j)]


def polyline_crossings(first: np.ndarray, second: np.ndarray) -> List[Tuple[int, int]]:
    """Segment pairs (i, j) where two open polylines on the sphere cross."""
    A = np.asarray(first, dtype=float)
    B = np.asarray(second, dtype=float)
    if len(A) < 2 or len(B) < 2:
        return []
    i, j = np.nonzero(_crossing_matrix(A[:-1], A[1:], B[:-1], B[1:]))
    return [(int(p), int(q)) for p, q in zip(i, j)]


def extremal_front(t: float, n_samples: int, params: NormalizedParams) -> FrontReport:
    """
    Endpoints at time ``t`` of the extremals issued from a uniform grid of
    covector angles, with the self-intersections of the closed polyline they form.
    """
    if n_samples < 8:
        raise ValueError(f"at least 8 front samples required, got {n_samples!r}")
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    thetas = np.linspace(0.0, 2.0 * math.pi, n_samples, endpoint=False)
    north = NORTH.as_array()
    points = np.empty((n_samples, 3))
    for i, theta in enumerate(thetas):
        if t == 0.0:
            points[i] = north
            continue
        trace = extremal_from_theta(float(theta), t, params)
        points[i] = schedule_endpoint(north, trace.schedule, params)

    intersections = find_self_intersections(points)
    logger.info(f"front at t={t:.6g}: {n_samples} samples, {len(intersections)} crossings")
    return FrontReport(
        time=t,
        samples=[
            FrontSample(theta=float(theta), endpoint=BlochPoint.from_array(p))
            for theta, p in zip(thetas, points)
        ],
        intersections=intersections,
    )


def spin_flip_time(params: NormalizedParams) -> float:
    """
    Time for the longest-first-arc extremal to reach the south pole, used to
    place fronts.

    Raises:
        BetaNotQuarterPi: if the bounds differ
    """
    if not params.is_symmetric:
        raise BetaNotQuarterPi(f"beta={params.beta!r} is not pi/4", {"beta": params.beta})
    return math.pi * s_max(FamilyTag.PP, params) / abs(theta_of_alpha(params.alpha))


# Singular loci


def great_circle(normal: Sequence[float], n_samples: int) -> np.ndarray:
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e = np.cross(n, helper)
    e = e / np.linalg.norm(e)
    f = np.cross(n, e)
    phi = np.linspace(0.0, 2.0 * math.pi, n_samples, endpoint=False)
    return np.outer(np.cos(phi), e) + np.outer(np.sin(phi), f)


def singular_loci(params: NormalizedParams, n_samples: int = 360) -> List[LocusCurve]:
    """
    The circles that can carry singular arcs, each with its singular control.

    C0 is the equator (both controls zero). C1+/- are the planes
    +/- tan(alpha) cos(beta) x2 = x3 (u1 = 0, u2 = +/-1) and C2+/- the planes
    +/- tan(alpha) sin(beta) x1 = -x3 (u1 = +/-1, u2 = 0).
    """
    ta = math.tan(params.alpha)
    tc, ts = ta * math.cos(params.beta), ta * math.sin(params.beta)
    layout = [
        ("C0", (0.0, 0.0), (0.0, 0.0, 1.0)),
        ("C1+", (0.0, 1.0), (0.0, tc, -1.0)),
        ("C1-", (0.0, -1.0), (0.0, -tc, -1.0)),
        ("C2+", (1.0, 0.0), (ts, 0.0, 1.0)),
        ("C2-", (-1.0, 0.0), (-ts, 0.0, 1.0)),
    ]
    return [
        LocusCurve(label=label, control=control, points=great_circle(normal, n_samples))
        for label, control, normal in layout
    ]


# Synthesis


def _max_interior_arcs(params: NormalizedParams) -> int:
    blocks = math.ceil(math.pi / (4.0 * abs(theta_of_alpha(params.alpha))))
    return 4 * (blocks + 2)


def pre_disk_arcs(
    family: FamilyTag,
    s: float,
    v: float,
    params: NormalizedParams,
    radius: float,
) -> Tuple[List[Tuple[float, FamilyTag, np.ndarray, float]], Optional[float]]:
    """
    Arcs of the extremal (family, s) up to its first entry into the disk of
    angular ``radius`` around the south pole.

    Returns:
        ([(start time, control, start point, duration)], entry time or None)
    """
    south = SOUTH.as_array()
    threshold = math.cos(radius)
    cycle = family.cycle_after()
    x = NORTH.as_array()
    t = 0.0
    arcs: List[Tuple[float, FamilyTag, np.ndarray, float]] = []
    for i in range(_max_interior_arcs(params) + 1):
        tag = family if i == 0 else cycle[(i - 1) % 4]
        duration = s if i == 0 else v
        axis = generator_axis(tag.signs(), params)
        A, B, C = rotation_dot_form(south, axis, x)
        entry = first_reach(A, B, C - threshold, duration)
        if entry is not None:
            arcs.append((t, tag, x, entry))
            return arcs, t + entry
        arcs.append((t, tag, x, duration))
        x = rotation_matrix(axis, duration) @ x
        t += duration
    return arcs, None


def _seed_candidates(
    target: np.ndarray, params: NormalizedParams, radius: float, s_samples: int
) -> List[Tuple[float, FamilyTag, float, float]]:
    # closest approach of every sampled extremal before it enters the disk
    seeds: List[Tuple[float, FamilyTag, float, float]] = []
    for family in FamilyTag:
        best: List[Tuple[float, FamilyTag, float, float]] = []
        for s in np.linspace(0.0, s_max(family, params), s_samples):
            s = float(s)
            v = interbang_duration(s, family, params)
            arcs, _ = pre_disk_arcs(family, s, v, params, radius)
            for t0, tag, x0, duration in arcs:
                A, B, C = rotation_dot_form(target, generator_axis(tag.signs(), params), x0)
                tau, value = peak_on_interval(A, B, C, duration)
                best.append((value, family, s, t0 + tau))
        best.sort(key=lambda c: -c[0])
        seeds.extend(best[:3])
    seeds.sort(key=lambda c: -c[0])
    return seeds


def _refine(
    seed: Tuple[float, FamilyTag, float, float],
    target: np.ndarray,
    params: NormalizedParams,
) -> Tuple[float, float, float]:
    _, family, s0, t0 = seed
    top = s_max(family, params)

    def point(z: np.ndarray) -> np.ndarray:
        return spec_point_array(extremal_spec(float(z[1]), family, float(z[0]), params), params)

    def residual(z: np.ndarray) -> np.ndarray:
        return point(z) - target

    def jacobian(z: np.ndarray) -> np.ndarray:
        s, t = float(z[0]), float(z[1])
        spec = extremal_spec(t, family, s, params)
        x = spec_point_array(spec, params)
        d_t = np.cross(generator_axis(active_family(spec).signs(), params), x)
        h = 1e-7 * top
        s_other = s + h if s + h <= top else s - h
        d_s = (point(np.array([s_other, t])) - x) / (s_other - s)
        return np.column_stack([d_s, d_t])

    start = np.array([min(max(s0, 1e-9 * top), top * (1.0 - 1e-9)), max(t0, 1e-9)])
    fit = least_squares(
        residual,
        start,
        jac=jacobian,
        bounds=([0.0, 0.0], [top, np.inf]),
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=200,
    )
    s, t = float(fit.x[0]), float(fit.x[1])
    return s, t, float(np.linalg.norm(residual(fit.x)))


def solve_synthesis(
    target: BlochPoint,
    params: NormalizedParams,
    tol: float = 1e-10,
    exclusion_factor: float = 3.0,
    s_samples: int = 200,
    max_seeds: int = 12,
) -> Tuple[ExtremalSpec, float]:
    """
    Find the extremal that reaches ``target`` before entering the south-pole disk.

    Every sampled extremal is scanned for its closest approach; the best
    approaches seed a bounded least-squares refinement in (s, t). Among the
    refined solutions that reach the target within ``tol`` before entering
    the disk, the earliest wins.

    Args:
        target: Point to reach
        params: Normalized parameters
        tol: Accepted distance between the extremal point and the target
        exclusion_factor: Disk radius around the south pole in units of alpha
        s_samples: First-arc grid size per family

    Returns:
        (ExtremalSpec, total normalized time)

    Raises:
        TargetInCutLocusNeighborhood: if the target lies inside the disk
        NoConvergence: if no refined candidate reaches the target
    """
    radius = params.exclusion_radius(exclusion_factor)
    goal = target.as_array()
    distance = angular_distance(goal, SOUTH.as_array())
    if distance <= radius:
        raise TargetInCutLocusNeighborhood(
            f"target is {distance:.6g} rad from the south pole, inside the {radius:.6g} disk",
            {"distance": distance, "radius": radius},
        )
    if not params.is_symmetric:
        logger.warning(f"synthesis at beta={params.beta:.6f}: structure established for pi/4 only")

    seeds = _seed_candidates(goal, params, radius, s_samples)[:max_seeds]
    best_residual = math.inf
    solutions: List[Tuple[float, FamilyTag, float]] = []
    for seed in seeds:
        family = seed[1]
        s, t, res = _refine(seed, goal, params)
        best_residual = min(best_residual, res)
        if res > tol:
            continue
        v = interbang_duration(s, family, params)
        _, entry = pre_disk_arcs(family, s, v, params, radius)
        if entry is not None and t > entry + 1e-9:
            continue
        solutions.append((t, family, s))

    if not solutions:
        raise NoConvergence(
            f"no extremal reaches the target within {tol:g}",
            {"best_residual": best_residual, "seeds": len(seeds)},
        )
    t, family, s = min(solutions, key=lambda c: c[0])
    spec = extremal_spec(t, family, s, params)
    logger.info(f"synthesis solved: family={family.value} s={s:.12g} T={t:.12g} n={spec.n}")
    return spec, t


def synthesis_result(
    spec: ExtremalSpec, target: BlochPoint, params: NormalizedParams
) -> SynthesisResult:
    """JSON-ready description of a solved synthesis."""
    point = spec_point_array(spec, params)
    total = spec.total_time
    schedule = extremal_schedule(spec.family, spec.s, total, params, v=spec.v)
    return SynthesisResult(
        family=spec.family,
        s=spec.s,
        n=spec.n,
        phase=spec.phase,
        leftover=spec.leftover,
        total_time=total,
        physical_time=params.physical_time(total),
        switch_times=schedule.switch_times(),
        final_state=[float(c) for c in point],
        residual=float(np.linalg.norm(point - target.as_array())),
    )


def sample_extremal(
    family: FamilyTag,
    s: float,
    horizon: float,
    params: NormalizedParams,
    dt: float,
    stop: Optional[Callable[[np.ndarray], bool]] = None,
) -> np.ndarray:
    """Points of the extremal (family, s) every ``dt`` up to ``horizon`` or the first ``stop``."""
    v = interbang_duration(s, family, params)
    out: List[np.ndarray] = []
    for t in np.arange(0.0, horizon + 0.5 * dt, dt):
        x = spec_point_array(extremal_spec(float(t), family, s, params, v=v), params)
        if stop is not None and stop(x):
            break
        out.append(x)
    return np.array(out)


def snake_separation(
    params: NormalizedParams,
    fractions: Sequence[float] = (0.1, 0.3, 0.5, 0.7, 0.9),
    dt: float = 0.05,
    exclusion_factor: float = 3.0,
) -> SnakeReport:
    """
    Sample extremals of every family up to their entry into the south-pole disk
    and compare paths of different families.

    First arcs are taken at ``fractions`` of s_max; the boundary values are left
    out since s = s_max of one family and s = 0 of the next give the same path.
    Reports the number of crossing segment pairs and the smallest distance
    between two paths at a common time t > 0.
    """
    if not fractions or any(not 0.0 < f < 1.0 for f in fractions):
        raise ValueError(f"fractions must lie in (0, 1), got {fractions!r}")
    radius = params.exclusion_radius(exclusion_factor)
    south = SOUTH.as_array()

    def inside(x: np.ndarray) -> bool:
        return angular_distance(x, south) <= radius

    paths: List[Tuple[FamilyTag, np.ndarray]] = []
    for family in FamilyTag:
        top = s_max(family, params)
        for f in fractions:
            s = f * top
            v = interbang_duration(s, family, params)
            arcs, entry = pre_disk_arcs(family, s, v, params, radius)
            horizon = entry if entry is not None else arcs[-1][0] + arcs[-1][3]
            # drop t = 0, every path starts at the north pole
            points = sample_extremal(family, s, horizon, params, dt, stop=inside)[1:]
            paths.append((family, points))

    crossings = 0
    closest = math.inf
    for i, (fi, a) in enumerate(paths):
        for fj, b in paths[i + 1 :]:
            if fi is fj:
                continue
            crossings += len(polyline_crossings(a, b))
            common = min(len(a), len(b))
            if common:
                gaps = np.linalg.norm(a[:common] - b[:common], axis=1)
                closest = min(closest, float(gaps.min()))
    logger.info(f"four snakes: {len(paths)} paths, {crossings} crossings, closest {closest:.3g}")
    return SnakeReport(n_paths=len(paths), crossings=crossings, min_distance=closest)
