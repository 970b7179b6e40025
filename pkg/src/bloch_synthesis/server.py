"""
Bloch Synthesis Model Context Protocol Server

This module exposes the time-optimal synthesis library as MCP tools over stdio:
parameter normalization, switching times, the synthesis solver, extremal and
switching-curve geometry, singular loci, spin-flip strategies and the
brute-force cross-checks.
"""

import json
import logging
from typing import Any, Awaitable, Callable, Dict, List, Optional

from mcp.server import NotificationOptions, Server
from mcp.server.models import InitializationOptions
from mcp.server.stdio import stdio_server
from mcp.shared.exceptions import McpError
from mcp.types import (
    INTERNAL_ERROR,
    INVALID_PARAMS,
    METHOD_NOT_FOUND,
    ErrorData,
    TextContent,
    Tool,
)

from . import __version__
from .config import Settings, get_settings
from .exceptions import BlochSynthesisError
from .tools import GeometryTools, StrategyTools, SynthesisTools

logger = logging.getLogger(__name__)

ALPHA = {"type": "number", "description": "Normalized control strength in (0, pi/4)"}
BETA = {"type": "number", "description": "Bound ratio angle in (0, pi/2), default pi/4"}
FAMILY = {
    "type": "string",
    "enum": ["pp", "pm", "mm", "mp"],
    "description": "Initial bang control",
}
POINT = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 3,
    "maxItems": 3,
    "description": "Point on the Bloch sphere (normalized on input)",
}


def tool_catalog() -> List[Tool]:
    """Every tool the server exposes, with its JSON input schema."""
    return [
        # Geometry tools
        Tool(
            name="normalize_params",
            description="Normalize physical bounds (E, M1, M2) or describe a given alpha/beta",
            inputSchema={
                "type": "object",
                "properties": {
                    "E": {"type": "number", "description": "Energy half-gap"},
                    "M1": {"type": "number", "description": "Bound of the first field"},
                    "M2": {"type": "number", "description": "Bound of the second field"},
                    "alpha": ALPHA,
                    "beta": BETA,
                },
            },
        ),
        Tool(
            name="switching_times",
            description="First arc and common interior arc durations of an extremal",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "family": FAMILY,
                    "s": {"type": "number", "description": "First arc duration"},
                    "theta": {"type": "number", "description": "Covector angle"},
                },
                "required": ["alpha"],
            },
        ),
        Tool(
            name="extremal_point",
            description="Position at time t on the extremal with first arc s",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "family": FAMILY,
                    "s": {"type": "number", "description": "First arc duration"},
                    "t": {"type": "number", "description": "Normalized time"},
                },
                "required": ["alpha", "family", "s", "t"],
            },
        ),
        Tool(
            name="switching_curve",
            description="Samples of the k-th switching curve with refraction coefficients",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "family": FAMILY,
                    "k": {"type": "integer", "minimum": 1, "description": "Curve index"},
                    "samples": {"type": "integer", "minimum": 2, "description": "Sample count"},
                },
                "required": ["alpha", "k"],
            },
        ),
        Tool(
            name="singular_loci",
            description="Great circles that can carry singular arcs",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "samples": {"type": "integer", "minimum": 4, "description": "Points each"},
                },
                "required": ["alpha"],
            },
        ),
        # Synthesis tools
        Tool(
            name="solve_synthesis",
            description="Time-optimal control from the north pole to a target",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "target": POINT,
                    "tol": {"type": "number", "description": "Accepted residual"},
                    "exclusion_factor": {
                        "type": "number",
                        "description": "South-pole disk radius in units of alpha",
                    },
                },
                "required": ["alpha", "target"],
            },
        ),
        Tool(
            name="oracle_bracket",
            description="Brute-force bracket of the minimum time to a target",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "target": POINT,
                    "dt": {"type": "number", "description": "Switching grid step"},
                    "eps": {"type": "number", "description": "Arrival radius"},
                },
                "required": ["alpha", "target"],
            },
        ),
        Tool(
            name="verify_structure",
            description="Check the bang-bang structure of extremals over a covector grid",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "beta": BETA,
                    "n_theta": {"type": "integer", "minimum": 4, "description": "Covector angles"},
                    "horizon": {"type": "number", "description": "Extremal duration"},
                },
                "required": ["alpha"],
            },
        ),
        # Strategy tools
        Tool(
            name="suboptimal_strategy",
            description="S1 or S2 spin flip for equal bounds",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "strategy": {"type": "string", "enum": ["s1", "s2"]},
                    "start": FAMILY,
                },
                "required": ["alpha"],
            },
        ),
        Tool(
            name="compare_strategies",
            description="Transfer-time ratio of a strategy to the circularly polarized field",
            inputSchema={
                "type": "object",
                "properties": {
                    "alpha": ALPHA,
                    "strategy": {"type": "string", "enum": ["s1", "s2"]},
                },
                "required": ["alpha"],
            },
        ),
    ]


class BlochSynthesisServer:
    """
    Bloch synthesis MCP server implementation.

    Tool calls are routed by name to the tool classes; library errors become
    INVALID_PARAMS errors and anything unexpected INTERNAL_ERROR.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

        # Initialize tool handlers
        self.geometry_tools = GeometryTools(self.settings)
        self.synthesis_tools = SynthesisTools(self.settings)
        self.strategy_tools = StrategyTools(self.settings)

        self.routes: Dict[str, Callable[..., Awaitable[Any]]] = {
            "normalize_params": self.geometry_tools.normalize_params,
            "switching_times": self.geometry_tools.switching_times,
            "extremal_point": self.geometry_tools.extremal_point,
            "switching_curve": self.geometry_tools.switching_curve,
            "singular_loci": self.geometry_tools.singular_loci,
            "solve_synthesis": self.synthesis_tools.solve_synthesis,
            "oracle_bracket": self.synthesis_tools.oracle_bracket,
            "verify_structure": self.synthesis_tools.verify_structure,
            "suboptimal_strategy": self.strategy_tools.suboptimal_strategy,
            "compare_strategies": self.strategy_tools.compare_strategies,
        }

        # Create MCP server
        self.server: Server = Server(self.settings.server_name)
        self._register_handlers()

    def _register_handlers(self) -> None:
        """Register MCP handlers for tools."""

        @self.server.list_tools()
        async def handle_list_tools() -> List[Tool]:
            return tool_catalog()

        @self.server.call_tool()
        async def handle_call_tool(
            name: str, arguments: Optional[Dict[str, Any]]
        ) -> List[TextContent]:
            return await self.call(name, arguments or {})

    async def call(self, name: str, arguments: Dict[str, Any]) -> List[TextContent]:
        """
        Run one tool and wrap its JSON result.

        Raises:
            McpError: METHOD_NOT_FOUND for unknown tools, INVALID_PARAMS for bad
                arguments or library errors, INTERNAL_ERROR otherwise
        """
        handler = self.routes.get(name)
        if handler is None:
            raise McpError(ErrorData(code=METHOD_NOT_FOUND, message=f"Unknown tool: {name}"))

        logger.info(f"Calling tool: {name} with arguments: {arguments}")
        try:
            result = await handler(**arguments)
        except BlochSynthesisError as e:
            logger.error(f"Tool {name} failed: {e.code}: {e.message}")
            raise McpError(
                ErrorData(code=INVALID_PARAMS, message=f"{e.code}: {e.message}", data=e.to_dict())
            ) from e
        except (TypeError, ValueError) as e:
            logger.error(f"Tool {name} rejected its arguments: {e}")
            raise McpError(ErrorData(code=INVALID_PARAMS, message=str(e))) from e
        except Exception as e:
            logger.error(f"Error calling tool {name}: {e}")
            message = f"Tool execution failed: {e}"
            raise McpError(ErrorData(code=INTERNAL_ERROR, message=message)) from e

        return [TextContent(type="text", text=json.dumps(result, indent=2))]

    async def run(self) -> None:
        """Run the MCP server over stdio."""
        logger.info(f"Starting {self.settings.server_name} {__version__}...")
        async with stdio_server() as (read_stream, write_stream):
            await self.server.run(
                read_stream,
                write_stream,
                InitializationOptions(
                    server_name=self.settings.server_name,
                    server_version=__version__,
                    capabilities=self.server.get_capabilities(
                        notification_options=NotificationOptions(),
                        experimental_capabilities={},
                    ),
                ),
            )


async def main() -> None:
    """Main entry point for the MCP server."""
    server = BlochSynthesisServer()
    await server.run()
