"""
Parameter and extremal geometry tools for the synthesis MCP server.
"""

from typing import Any, Dict, List, Optional

from ..config import Settings
from ..services.engine import parse_family
from .common import engine_for, offload


class GeometryTools:
    """
    Tools for normalized parameters, switching times, extremals and singular loci.
    """

    def __init__(self, settings: Settings):
        """
        Initialize geometry tools.

        Args:
            settings: Numerical defaults for every engine built by these tools
        """
        self.settings = settings

    async def normalize_params(
        self,
        E: Optional[float] = None,
        M1: Optional[float] = None,
        M2: Optional[float] = None,
        alpha: Optional[float] = None,
        beta: Optional[float] = None,
    ) -> Dict[str, Any]:
        """
        Normalize physical bounds, or describe an already normalized pair.

        Args:
            E: Energy half-gap
            M1: Bound of the first field
            M2: Bound of the second field
            alpha: Normalized strength, instead of E/M1/M2
            beta: Bound ratio angle, defaults to pi/4

        Returns:
            alpha, beta, k with s_max per family and the monodromy angle
        """
        engine = engine_for(self.settings, alpha=alpha, beta=beta, E=E, M1=M1, M2=M2)
        return await offload(engine.describe)

    async def switching_times(
        self,
        alpha: float,
        family: str = "pp",
        s: Optional[float] = None,
        theta: Optional[float] = None,
        beta: Optional[float] = None,
    ) -> Dict[str, Any]:
        """
        First arc and interior arc durations of an extremal.

        Args:
            alpha: Normalized strength
            family: Initial bang control, one of pp, pm, mm, mp
            s: First arc duration
            theta: Covector angle, used instead of s
            beta: Bound ratio angle

        Returns:
            s, s_max and v by root finding, closed form and (equal bounds) expansion
        """
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.switching_times, parse_family(family), s=s, theta=theta)

    async def extremal_point(
        self, alpha: float, family: str, s: float, t: float, beta: Optional[float] = None
    ) -> Dict[str, Any]:
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.extremal_point, parse_family(family), s, t)

    async def switching_curve(
        self,
        alpha: float,
        k: int,
        samples: int = 50,
        family: str = "pp",
        beta: Optional[float] = None,
    ) -> List[Dict[str, Any]]:
        """
        Samples of the k-th switching curve with refraction coefficients.

        Args:
            alpha: Normalized strength
            k: Curve index, 1 for the first switching
            samples: Number of first-arc durations on [0, s_max]
            family: Initial bang control
            beta: Bound ratio angle

        Returns:
            One entry per sample: k, s, point, c1, c2, locally_optimal
        """
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.switching_curve, k, samples, parse_family(family))

    async def singular_loci(
        self, alpha: float, samples: int = 90, beta: Optional[float] = None
    ) -> List[Dict[str, Any]]:
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.loci_summary, samples)
