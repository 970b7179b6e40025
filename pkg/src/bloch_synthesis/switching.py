"""
Closed-form switching times.

Covers the maximal first-arc duration, the first switching time as a function
of the covector angle, the common interior arc duration v(s), the rotation
angle theta(alpha) of the symmetric monodromy, and their small-alpha expansions.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from .adjoint import family_of_theta
from .core import generator_axis
from .exceptions import BetaNotQuarterPi, DomainError, NoRoot, RootOutsideRange
from .models import FamilyTag, NormalizedParams
from .trig import arccos_clamped, bracketed_roots, rotation_dot_form

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 256
DEFAULT_XTOL = 1e-14
RANGE_TOL = 1e-12


def _pairs_with_pm(family: FamilyTag) -> bool:
    return family in (FamilyTag.PM, FamilyTag.MP)


def _family_beta(family: FamilyTag, params: NormalizedParams) -> float:
    # the (1,-1)/(-1,1) families are the mirror image with the two bounds exchanged
    return math.pi / 2 - params.beta if _pairs_with_pm(family) else params.beta


def s_max(family: FamilyTag, params: NormalizedParams) -> float:
    """
    Longest possible first arc of the given family.

    arccos(-q / (1 - q)) with q = sin^2(alpha) cos^2(beta) for PP/MM and
    q = sin^2(alpha) sin^2(beta) for PM/MP.
    """
    q = (math.sin(params.alpha) * math.cos(_family_beta(family, params))) ** 2
    return math.acos(-q / (1.0 - q))


def s_max_taylor(alpha: float) -> float:
    return math.pi / 2 + alpha**2 / 2 + alpha**4 / 12


def first_switch_equation(theta: float, s: float, params: NormalizedParams) -> float:
    """
    f(theta, s) = a cos s - b sin s + c for the (1,1) family; its zero in s is
    the first switching time.
    """
    sa2 = math.sin(params.alpha) ** 2
    ca = math.cos(params.alpha)
    b2 = 2.0 * params.beta
    cb2 = math.cos(params.beta) ** 2
    a = 2.0 * (1.0 - sa2 * cb2) / sa2 * math.cos(theta) - math.sin(b2) * math.sin(theta)
    b = 2.0 * ca / sa2 * math.sin(theta)
    c = (1.0 + math.cos(b2)) * math.cos(theta) + math.sin(b2) * math.sin(theta)
    return a * math.cos(s) - b * math.sin(s) + c


def _switching_gains(params: NormalizedParams) -> Tuple[np.ndarray, np.ndarray]:
    sa = math.sin(params.alpha)
    return (
        np.array([sa * math.sin(params.beta), 0.0, 0.0]),
        np.array([0.0, -sa * math.cos(params.beta), 0.0]),
    )


def first_switch_of_theta(
    theta: float,
    params: NormalizedParams,
    family: Optional[FamilyTag] = None,
    samples: int = DEFAULT_SAMPLES,
    xtol: float = DEFAULT_XTOL,
) -> float:
    """
    First switching time of the extremal with initial covector angle ``theta``.

    The momentum x cross lambda starts at (-sin t, cos t, 0) and rotates about
    the family's bang axis; each switching function is bracketed on [0, pi].

    Args:
        theta: Covector angle
        params: Normalized parameters
        family: Initial control; defaults to the quadrant of ``theta``

    Returns:
        The first switching time; 0 when a switching function starts on a
        zero and immediately leaves with the wrong sign

    Raises:
        NoRoot: if neither switching function vanishes on (0, pi]
    """
    family = family or family_of_theta(theta)
    signs = family.signs()
    axis = generator_axis(signs, params)
    m0 = np.array([-math.sin(theta), math.cos(theta), 0.0])
    zero_tol = 1e-12 * math.sin(params.alpha)

    best: Optional[float] = None
    for index, gain in enumerate(_switching_gains(params), start=1):
        A, B, C = rotation_dot_form(gain, axis, m0)
        if abs(A + C) <= zero_tol and B * signs[index - 1] < 0.0:
            return 0.0
        roots = bracketed_roots(
            lambda t: A * math.cos(t) + B * math.sin(t) + C, 0.0, math.pi, samples, xtol
        )
        roots = [r for r in roots if r > 1e-10]
        if roots and (best is None or roots[0] < best):
            best = roots[0]
    if best is None:
        raise NoRoot(
            f"no first switching on (0, pi] for theta={theta!r}",
            {"theta": theta, "family": family.value},
        )
    return best


def interbang_coefficients(
    s: float, params: NormalizedParams, family: FamilyTag = FamilyTag.PP
) -> Tuple[float, float, float]:
    """
    (a, b, c) of a cos v + b sin v + c = 0, the equation for the interior arc
    duration v after a first arc of length s.
    """
    ca = math.cos(params.alpha)
    cot2 = (ca / math.sin(params.alpha)) ** 2
    beta = _family_beta(family, params)
    sb, cb = math.sin(beta), math.cos(beta)
    cs, ss = math.cos(s), math.sin(s)
    a = -cb * cb * cs + ca * sb * cb * ss - cot2
    b = -ca * sb * cb * cs - cb * cb * ss + ca * sb * cb
    c = -sb * sb * cs - ca * sb * cb * ss
    return a, b, c


def interbang_duration(
    s: float,
    family: FamilyTag,
    params: NormalizedParams,
    samples: int = DEFAULT_SAMPLES,
    xtol: float = DEFAULT_XTOL,
) -> float:
    """
    Duration v(s) shared by all interior arcs of the extremal whose first arc
    lasts s.

    Raises:
        ValueError: if s lies outside [0, s_max(family)]
        RootOutsideRange: if the equation has no root in (0, pi]
    """
    top = s_max(family, params)
    if s < -RANGE_TOL or s > top + RANGE_TOL:
        raise ValueError(f"s={s!r} outside [0, {top!r}] for family {family.value}")
    a, b, c = interbang_coefficients(s, params, family)
    roots = bracketed_roots(
        lambda v: a * math.cos(v) + b * math.sin(v) + c, 0.0, math.pi, samples, xtol
    )
    roots = [r for r in roots if r > 0.0]
    if not roots:
        raise RootOutsideRange(
            "interior arc duration not found in (0, pi]",
            {"s": s, "family": family.value, "alpha": params.alpha, "beta": params.beta},
        )
    return roots[0]


def v_pi4_closed_form(s: float, params: NormalizedParams, clamp: float = 1e-9) -> float:
    """
    v(s) for equal bounds.

    Raises:
        BetaNotQuarterPi: if the bounds differ
    """
    if not params.is_symmetric:
        raise BetaNotQuarterPi(f"beta={params.beta!r} is not pi/4", {"beta": params.beta})
    al = params.alpha
    sa, ca = math.sin(al), math.cos(al)
    s2a_sq = math.sin(2 * al) ** 2
    A = 8.0 * ca * sa * sa * math.sin(s)
    B = 2.0 * s2a_sq * math.cos(s)
    C = 4.0 * sa**4 * math.cos(2 * s)
    d = s2a_sq
    e = 5.0 + 2.0 * math.cos(2 * al) + math.cos(4 * al)
    return arccos_clamped((d - A - B - C) / (e - A + B), clamp)


def v_general_closed_form(
    s: float, family: FamilyTag, params: NormalizedParams, clamp: float = 1e-9
) -> float:
    """
    v(s) for arbitrary bounds, solving a cos v + b sin v + c = 0 in closed form.

    With R = a^2 + b^2 the two solutions are
    cos v = (-a c -/+ b sqrt(R - c^2)) / R, sin v = (-b c +/- a sqrt(R - c^2)) / R;
    v is the smaller one with sin v >= 0.

    Raises:
        DomainError: if R - c^2 is negative beyond ``clamp`` or no solution lies in (0, pi]
    """
    a, b, c = interbang_coefficients(s, params, family)
    R = a * a + b * b
    radicand = R - c * c
    if radicand < -clamp * R:
        raise DomainError(
            "interior arc equation has no real solution",
            {"s": s, "family": family.value, "radicand": radicand},
        )
    root = math.sqrt(max(radicand, 0.0))
    candidates = []
    for sign in (1.0, -1.0):
        cos_v = (-a * c - sign * b * root) / R
        sin_v = (-b * c + sign * a * root) / R
        if sin_v < -clamp:
            continue
        v = arccos_clamped(cos_v, clamp)
        if v > 0.0:
            candidates.append(v)
    if not candidates:
        raise DomainError(
            "interior arc duration not in (0, pi]", {"s": s, "family": family.value}
        )
    return min(candidates)


def theta_of_alpha(alpha: float) -> float:
    """
    Rotation angle of the symmetric monodromy at s = 0; negative for alpha > 0.
    """
    sa, ca = math.sin(alpha), math.cos(alpha)
    return math.asin(-2.0 * math.sqrt(2.0) * sa * ca / (1.0 + ca * ca))


def taylor_f1(s: float) -> float:
    return -0.5 + math.cos(s) + math.sin(s)


def taylor_f2(s: float) -> float:
    return -1.0 / 12.0 + (2.0 / 3.0) * math.cos(s) + math.sin(s) / 6.0 - 0.5 * math.cos(2 * s)


def v_taylor(s: float, alpha: float) -> float:
    """Fourth-order small-alpha expansion of v(s) for equal bounds."""
    return math.pi / 2 + taylor_f1(s) * alpha**2 + taylor_f2(s) * alpha**4
