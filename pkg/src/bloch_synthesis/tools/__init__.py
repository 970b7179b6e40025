"""
MCP tools for the synthesis library.
"""

from .geometry import GeometryTools
from .strategies import StrategyTools
from .synthesis import SynthesisTools

__all__ = ["GeometryTools", "SynthesisTools", "StrategyTools"]
