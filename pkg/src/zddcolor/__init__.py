"""Exact graph coloring by branch-and-price with ZDD-based pricing."""

from .bnp import SolveResult, SolverConfig, SolverStats, solve
from .graph import Graph, parse_dimacs, read_dimacs, to_dimacs
from .miszdd import MisZdd, make_mis_zdd
from .zdd import FALSE, TRUE, Zdd, ZddError

__all__ = [
    "FALSE",
    "TRUE",
    "Graph",
    "MisZdd",
    "SolveResult",
    "SolverConfig",
    "SolverStats",
    "Zdd",
    "ZddError",
    "make_mis_zdd",
    "parse_dimacs",
    "read_dimacs",
    "solve",
    "to_dimacs",
]

__version__ = "0.1.0"
