"""
Root finding for the trigonometric forms A cos t + B sin t + C that every
switching function takes along a bang arc.
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .exceptions import DomainError

TWO_PI = 2.0 * math.pi


def sign_change_roots(A: float, B: float, C: float, tangent_tol: float = 1e-12) -> List[float]:
    """
    Roots in [0, 2pi) at which A cos t + B sin t + C changes sign.

    Uses the phase-shift form R cos(t - d) = -C. Tangential zeros, where
    |C| is within ``tangent_tol`` of R, are rejected.
    """
    R = math.hypot(A, B)
    if R == 0.0:
        return []
    ratio = -C / R
    if abs(ratio) >= 1.0 - tangent_tol:
        return []
    delta = math.atan2(B, A)
    half = math.acos(ratio)
    roots = sorted(((delta + half) % TWO_PI, (delta - half) % TWO_PI))
    return roots


def first_crossing(
    A: float, B: float, C: float, skip_origin: bool = False, tangent_tol: float = 1e-12
) -> Optional[float]:
    """
    Smallest positive sign-changing root.

    With ``skip_origin`` the root sitting at t = 0 (the function starts on a
    zero) is discarded and the other root of the period is returned.
    """
    roots = sign_change_roots(A, B, C, tangent_tol)
    if not roots:
        return None
    if skip_origin:
        origin = min(roots, key=lambda r: min(r, TWO_PI - r))
        roots = [r for r in roots if r is not origin]
        return roots[0] if roots else None
    return roots[0]


def bracketed_roots(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 256,
    xtol: float = 1e-14,
) -> List[float]:
    """
    All sign changes of ``func`` on [lo, hi] found on a uniform sample grid and
    refined with Brent's method.
    """
    grid = np.linspace(lo, hi, samples + 1)
    values = np.array([func(float(x)) for x in grid])
    roots: List[float] = [float(x) for x, y in zip(grid, values) if y == 0.0]
    for i in range(samples):
        if values[i] * values[i + 1] < 0.0:
            root = brentq(func, grid[i], grid[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)
            roots.append(float(root))
    return sorted(roots)


def arccos_clamped(value: float, tol: float = 1e-9) -> float:
    """
    arccos with round-off clamping.

    Raises:
        DomainError: if the argument leaves [-1, 1] by more than ``tol``
    """
    if value > 1.0 + tol or value < -1.0 - tol:
        raise DomainError(f"arccos argument {value!r} outside [-1, 1]", {"argument": value})
    return math.acos(min(1.0, max(-1.0, value)))


def rotation_dot_form(
    gain: np.ndarray, axis: np.ndarray, x0: np.ndarray
) -> Tuple[float, float, float]:
    """
    (A, B, C) with gain . R(t) x0 = A cos t + B sin t + C, R(t) the unit-speed
    rotation about ``axis``.
    """
    w = np.asarray(axis, dtype=float)
    w = w / np.linalg.norm(w)
    along = float(np.dot(gain, w)) * float(np.dot(w, x0))
    return float(np.dot(gain, x0)) - along, float(np.dot(gain, np.cross(w, x0))), along


def peak_on_interval(A: float, B: float, C: float, length: float) -> Tuple[float, float]:
    """Maximum of A cos t + B sin t + C over [0, length], as (t, value)."""
    candidates = [0.0, length]
    stationary = math.atan2(B, A) % TWO_PI
    if stationary <= length:
        candidates.append(stationary)
    values = [A * math.cos(t) + B * math.sin(t) + C for t in candidates]
    best = int(np.argmax(values))
    return candidates[best], values[best]


def first_reach(A: float, B: float, C: float, length: float) -> Optional[float]:
    """First t in [0, length] with A cos t + B sin t + C >= 0, or None."""
    if A + C >= 0.0:
        return 0.0
    roots = [r for r in sign_change_roots(A, B, C) if r <= length]
    return roots[0] if roots else None
