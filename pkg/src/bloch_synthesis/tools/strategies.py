"""
Spin-flip strategy tools for the synthesis MCP server.
"""

from typing import Any, Dict

from ..config import Settings
from ..services.engine import SynthesisEngine, parse_family
from .common import engine_for, offload


class StrategyTools:
    """
    Tools for the saturated-cycle spin flips and their comparison with the circle law.
    """

    def __init__(self, settings: Settings):
        self.settings = settings

    async def suboptimal_strategy(
        self, alpha: float, strategy: str = "s2", start: str = "pm"
    ) -> Dict[str, Any]:
        """
        Build the S1 or S2 spin flip for equal bounds.

        Args:
            alpha: Normalized strength
            strategy: s1 (pi/2 arcs, inexact) or s2 (de-rated, exact)
            start: First control of the S1 cycle

        Returns:
            StrategyReport fields
        """
        engine = engine_for(self.settings, alpha=alpha)
        report = await offload(engine.suboptimal, strategy, parse_family(start))
        return report.model_dump(mode="json")

    async def compare_strategies(self, alpha: float, strategy: str = "s1") -> Dict[str, Any]:
        """
        Ratio of the strategy's transfer time to the circularly polarized field's.

        Args:
            alpha: Normalized strength
            strategy: s1 or s2

        Returns:
            alpha, strategy, ratio and the small-alpha limit pi/4
        """
        return await offload(SynthesisEngine.compare, alpha, strategy)
