"""Generators, edge-list I/O, batch orchestration and the command line."""

from .families import FamilySpec, generate, parse_family
from .io import EdgeListError, parse_edge_list, read_edge_list, serialize, write_edge_list

__all__ = [
    "EdgeListError",
    "FamilySpec",
    "generate",
    "parse_edge_list",
    "parse_family",
    "read_edge_list",
    "serialize",
    "write_edge_list",
]
