"""Edge colouring of multigraphs and clique-removal checks on their line graphs."""

from ._accel import backend
from .chromatic import (
    BudgetExceeded,
    Palette,
    chromatic_index,
    chromatic_index_at_most,
    kempe_component,
    kempe_swap,
    lower_bound,
    missing_colors,
    shannon_upper,
    validate,
)
from .linegraph import build_line_graph, cliques_of_size, clique_supports, max_clique_bruteforce
from .multigraph import GraphError, GraphStats, Multigraph
from .proof_engine import attempt_extension
from .tihany import VerificationInstance, Verifier, probe_f, verify_all_st, verify_instance

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "GraphError",
    "GraphStats",
    "Multigraph",
    "Palette",
    "VerificationInstance",
    "Verifier",
    "attempt_extension",
    "backend",
    "build_line_graph",
    "chromatic_index",
    "chromatic_index_at_most",
    "clique_supports",
    "cliques_of_size",
    "kempe_component",
    "kempe_swap",
    "lower_bound",
    "max_clique_bruteforce",
    "missing_colors",
    "probe_f",
    "shannon_upper",
    "validate",
    "verify_all_st",
    "verify_instance",
]
