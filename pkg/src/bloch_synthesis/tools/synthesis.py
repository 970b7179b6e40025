"""
Synthesis and brute-force verification tools for the synthesis MCP server.
"""

import math
from typing import Any, Dict, List, Optional

from ..config import Settings
from ..services.engine import parse_point
from .common import engine_for, offload


class SynthesisTools:
    """
    Tools that solve for optimal extremals and cross-check them.
    """

    def __init__(self, settings: Settings):
        """
        Initialize synthesis tools.

        Args:
            settings: Numerical defaults for every engine built by these tools
        """
        self.settings = settings

    async def solve_synthesis(
        self,
        alpha: float,
        target: List[float],
        beta: Optional[float] = None,
        tol: Optional[float] = None,
        exclusion_factor: Optional[float] = None,
    ) -> Dict[str, Any]:
        """
        Time-optimal extremal from the north pole to a target.

        Args:
            alpha: Normalized strength
            target: Target point, normalized onto the sphere
            beta: Bound ratio angle
            tol: Accepted residual
            exclusion_factor: South-pole disk radius in units of alpha

        Returns:
            family, s, n, phase, leftover, total_time, physical_time,
            switch_times, final_state, residual
        """
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.solve, parse_point(target), tol, exclusion_factor)

    async def oracle_bracket(
        self,
        alpha: float,
        target: List[float],
        dt: float = 0.02,
        eps: float = 0.05,
        beta: Optional[float] = None,
    ) -> Dict[str, Any]:
        """
        Bracket of the minimum time to a target from a bang-only reachable-set sweep.

        Returns:
            target, t_lower, t_lo, t_hi, dt, eps, frontier_peak and the search assumption
        """
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        results = await offload(engine.oracle, [parse_point(target)], dt, eps)
        return results[0].model_dump(mode="json")

    async def verify_structure(
        self,
        alpha: float,
        beta: Optional[float] = None,
        n_theta: int = 100,
        horizon: float = 8.0 * math.pi,
    ) -> Dict[str, Any]:
        engine = engine_for(self.settings, alpha=alpha, beta=beta)
        return await offload(engine.verify_structure, n_theta, horizon)
