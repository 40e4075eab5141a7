"""Q-index (signless Laplacian spectral radius) orderings of connected graphs
with a given number of edges: families, exact polynomials, bounds, and
exhaustive verification by isomorph-free enumeration."""

from __future__ import annotations

from .canon import canonical_certificate, canonical_labeling, is_isomorphic
from .errors import (
    CapExceededError,
    ConvergenceError,
    DisconnectedGraphError,
    Graph6Error,
    HypothesisError,
    ParameterError,
    QOrderError,
)
from .families import FamilySpec, build, family_graph, identify, parse_spec
from .graph import Graph, emit_graph6, girth, is_connected, make_graph, parse_graph6
from .spectral import PerronPair, q_index, q_matrix

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "ConvergenceError",
    "DisconnectedGraphError",
    "FamilySpec",
    "Graph",
    "Graph6Error",
    "HypothesisError",
    "ParameterError",
    "PerronPair",
    "QOrderError",
    "build",
    "canonical_certificate",
    "canonical_labeling",
    "emit_graph6",
    "family_graph",
    "girth",
    "identify",
    "is_connected",
    "is_isomorphic",
    "make_graph",
    "parse_graph6",
    "parse_spec",
    "q_index",
    "q_matrix",
]
