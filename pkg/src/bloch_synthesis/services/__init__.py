"""
Service layer shared by the CLI and the MCP server.
"""

from .engine import SynthesisEngine, parse_family, parse_point

__all__ = ["SynthesisEngine", "parse_family", "parse_point"]
