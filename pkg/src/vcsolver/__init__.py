"""Exact minimum vertex cover via parallel component-aware branch and reduce."""

from .engine import SolveResult, SolverConfig, Stats, solve
from .graph import StaticGraph, build_csr, induced_subgraph
from .ingest import (
    ParseError,
    canonicalize,
    load_graph,
    parse_edge_list,
    parse_matrix_market,
)
from .kernels import BACKEND
from .oracle import brute_force_mvc
from .preprocess import Preprocessed, root_reduce, select_width

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ParseError",
    "Preprocessed",
    "SolveResult",
    "SolverConfig",
    "StaticGraph",
    "Stats",
    "brute_force_mvc",
    "build_csr",
    "canonicalize",
    "induced_subgraph",
    "load_graph",
    "parse_edge_list",
    "parse_matrix_market",
    "root_reduce",
    "select_width",
    "solve",
    "__version__",
]
