"""Bounds on the upper-tail variational problem for subgraph counts in random digraphs."""

from .digraph import Digraph, classify, degrees, independent_sets, parse_digraph, serialize_digraph
from .matching import directional_bounds, induced_bipartite
from .variational import (
    BoundsReport,
    SolverConfig,
    Tightness,
    VariationalResult,
    assemble_bounds,
    build_f,
    build_fbar,
    build_g,
    profiles_for,
    solve_F,
    solve_G,
    tightness_certificates,
)
from .report import analyze

__all__ = [
    "Digraph",
    "parse_digraph",
    "serialize_digraph",
    "degrees",
    "classify",
    "independent_sets",
    "induced_bipartite",
    "directional_bounds",
    "profiles_for",
    "build_f",
    "build_g",
    "build_fbar",
    "solve_F",
    "solve_G",
    "tightness_certificates",
    "assemble_bounds",
    "analyze",
    "BoundsReport",
    "SolverConfig",
    "Tightness",
    "VariationalResult",
]
