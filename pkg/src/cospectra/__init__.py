"""Exact spectral invariants, walk combinatorics and mod-4 congruences for cospectral graphs."""

from .errors import CospectraError, DomainError, InvariantViolation, ParseError, ResourceCapError
from .graph import Graph, complement, parse_graph6, to_graph6
from .invariants import complement_char_poly, discriminant, eta, walk_counts, walk_matrix
from .linalg import char_poly, det

__all__ = [
    "CospectraError",
    "DomainError",
    "Graph",
    "InvariantViolation",
    "ParseError",
    "ResourceCapError",
    "char_poly",
    "complement",
    "complement_char_poly",
    "det",
    "discriminant",
    "eta",
    "parse_graph6",
    "to_graph6",
    "walk_counts",
    "walk_matrix",
]
