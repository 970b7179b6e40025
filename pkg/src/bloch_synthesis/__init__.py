"""
Bloch Sphere Time-Optimal Synthesis

This package computes the time-optimal control synthesis for a two-level
quantum system driven by two independently bounded fields: switching times,
extremal families, switching curves, fronts, the saturated spin-flip
strategies and a brute-force reachable-set oracle. A command-line interface
writes the results as CSV/JSON, and a Model Context Protocol server exposes
them as tools.
"""

__version__ = "0.1.0"
__author__ = "Bloch Synthesis Team"
__description__ = "Time-optimal control synthesis on the Bloch sphere"
