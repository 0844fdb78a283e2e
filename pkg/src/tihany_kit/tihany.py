"""Search for the clique-removal witnesses the enhanced Tihany theorems promise.

For a line graph L(G) with χ'(G) = s + t - 1 > ω'(G) and admissible
``(s, t, ell)`` a witness is an s-clique Q with χ'(G - Q) ≥ t + ell.  A
witness is certified by the exact solver failing to colour G - Q with
t + ell - 1 colours.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Literal, Optional

from .chromatic import (
    DEFAULT_NODE_LIMIT,
    BudgetExceeded,
    SolverStats,
    chromatic_index,
    chromatic_index_at_most,
)
from .linegraph import cliques_of_size, is_clique
from .multigraph import Multigraph

log = logging.getLogger(__name__)

Outcome = Literal["witness", "counterexample_candidate", "budget_exceeded"]


class HypothesisError(ValueError):
    """χ'(G) ≤ ω'(G): the theorems say nothing about this graph."""


def admissible_floor(ell: int) -> int:
    """Smallest s (and t) the theorems cover for this ell."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if ell == 0:
        return 2
    if ell == 1:
        return 4
    return math.ceil(3.5 * ell + 2)


def theorem_bound(ell: int) -> int:
    """⌈3.5·ell + 2⌉, the general bound on the admissible floor."""
    return math.ceil(3.5 * ell + 2)


def admissible_pairs(chi: int, ell: int) -> list[tuple[int, int]]:
    """All (s, t) with s ≤ t, s + t = chi + 1 and both at least the floor."""
    lo = admissible_floor(ell)
    total = chi + 1
    return [(s, total - s) for s in range(lo, total // 2 + 1) if total - s >= lo]


@dataclass(frozen=True)
class VerificationInstance:
    graph: Multigraph
    s: int
    t: int
    ell: int


@dataclass
class VerificationReport:
    instance: VerificationInstance
    outcome: Outcome
    witness: Optional[tuple[int, ...]] = None
    chi_prime_after: Optional[int] = None
    cliques_tested: int = 0
    solver_nodes: int = 0
    wall_time: float = 0.0
    diagnostics: Optional[dict] = None

    @property
    def is_witness(self) -> bool:
        return self.outcome == "witness"


@dataclass
class Verifier:
    """Clique search with a memo of residual colourability decisions.

    The memo is keyed on the residual's canonical key (exact for graphs with at
    most seven vertices, labelled beyond that) and the palette size.
    """

    node_limit: int = DEFAULT_NODE_LIMIT
    memo: dict = field(default_factory=dict)
    stats: SolverStats = field(default_factory=SolverStats)

    def colorable(self, g: Multigraph, k: int) -> bool:
        key = (g.canonical_key(), k)
        hit = self.memo.get(key)
        if hit is None:
            hit = chromatic_index_at_most(g, k, self.node_limit, self.stats) is not None
            self.memo[key] = hit
        return hit

    def chi(self, g: Multigraph) -> int:
        return chromatic_index(g, self.node_limit, self.stats)

    def find_witness(self, g: Multigraph, s: int, need: int) -> tuple[Optional[tuple[int, ...]], int]:
        """First s-clique whose removal leaves χ' ≥ need; also returns cliques tried."""
        tested = 0
        for clique in cliques_of_size(g, s):
            tested += 1
            if not self.colorable(g.remove_edges(clique.edge_ids), need - 1):
                return clique.edge_ids, tested
        return None, tested

    def verify(self, inst: VerificationInstance, _audit: bool = True) -> VerificationReport:
        g, s, t, ell = inst.graph, inst.s, inst.t, inst.ell
        start = time.perf_counter()
        nodes0 = self.stats.nodes
        report = VerificationReport(inst, "budget_exceeded")
        try:
            witness, tested = self.find_witness(g, s, t + ell)
            after = self.chi(g.remove_edges(witness)) if witness is not None else None
        except BudgetExceeded as exc:
            log.warning("budget exceeded on (s,t,ell)=(%d,%d,%d): %s", s, t, ell, exc)
            report.solver_nodes = self.stats.nodes - nodes0
            report.wall_time = time.perf_counter() - start
            return report
        report.cliques_tested = tested
        if witness is not None:
            report.outcome = "witness"
            report.witness = witness
            report.chi_prime_after = after
        else:
            report.outcome = "counterexample_candidate"
        report.solver_nodes = self.stats.nodes - nodes0
        report.wall_time = time.perf_counter() - start
        if report.outcome == "counterexample_candidate" and _audit:
            # rerun without memo and with double budget before believing it
            auditor = Verifier(node_limit=2 * self.node_limit)
            again = auditor.verify(inst, _audit=False)
            if again.outcome != "counterexample_candidate":
                return again
            report.diagnostics = _diagnostics(g, s, t, ell, auditor)
            log.error("counterexample candidate: %s", report.diagnostics)
        return report


def _diagnostics(g: Multigraph, s: int, t: int, ell: int, verifier: Verifier) -> dict:
    st = g.stats()
    residuals = []
    for clique in cliques_of_size(g, s):
        rest = g.remove_edges(clique.edge_ids)
        residuals.append({"clique": list(clique.edge_ids), "chi_after": verifier.chi(rest)})
    return {
        "edge_list": [list(p) for p in g.edge_pairs()],
        "vertex_count": g.vertex_count,
        "s": s,
        "t": t,
        "ell": ell,
        "chi": verifier.chi(g),
        "max_degree": st.max_degree,
        "tau": st.tau,
        "omega_prime": st.omega_prime,
        "residuals": residuals,
    }


def check_instance(inst: VerificationInstance, chi: int | None = None) -> None:
    """Raise ``ValueError`` unless the instance satisfies the theorem hypotheses."""
    g = inst.graph
    chi = chromatic_index(g) if chi is None else chi
    if inst.s + inst.t != chi + 1:
        raise ValueError(f"s + t = {inst.s + inst.t} but χ' + 1 = {chi + 1}")
    if chi <= g.stats().omega_prime:
        raise HypothesisError(f"χ' = {chi} does not exceed ω' = {g.stats().omega_prime}")
    lo = admissible_floor(inst.ell)
    if inst.s < lo or inst.t < lo:
        raise ValueError(f"s, t must be at least {lo} for ell = {inst.ell}")


def verify_instance(inst: VerificationInstance, verifier: Verifier | None = None) -> VerificationReport:
    check_instance(inst)
    return (verifier or Verifier()).verify(inst)


def verify_all_st(
    g: Multigraph, ell: int, verifier: Verifier | None = None, chi: int | None = None
) -> list[VerificationReport]:
    """One report per admissible (s, t) with s ≤ t.

    Raises :class:`HypothesisError` when χ'(G) ≤ ω'(G).
    """
    verifier = verifier or Verifier()
    chi = verifier.chi(g) if chi is None else chi
    omega = g.stats().omega_prime
    if chi <= omega:
        raise HypothesisError(f"χ' = {chi} does not exceed ω' = {omega}")
    return [
        verifier.verify(VerificationInstance(g, s, t, ell)) for s, t in admissible_pairs(chi, ell)
    ]


def probe_f(g: Multigraph, ell: int, verifier: Verifier | None = None) -> Optional[int]:
    """Least b such that every pair b ≤ s ≤ t, s + t = χ' + 1 has a witness.

    Walks s downward from the balanced pair and stops at the first failure.
    Returns ``None`` when the balanced pair itself has no witness.  The
    admissibility floor of the theorems is deliberately ignored.
    """
    verifier = verifier or Verifier()
    chi = verifier.chi(g)
    if chi <= g.stats().omega_prime:
        raise HypothesisError(f"χ' = {chi} does not exceed ω' = {g.stats().omega_prime}")
    total = chi + 1
    top = total // 2
    if top < 1:
        return None
    for s in range(top, 0, -1):
        witness, _ = verifier.find_witness(g, s, total - s + ell)
        if witness is None:
            return None if s == top else s + 1
    return 1


def witness_is_sound(report: VerificationReport, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    """Independent re-check of a witness: clique, size, and a fresh solver call."""
    inst = report.instance
    q = report.witness
    if q is None or len(set(q)) != inst.s or not is_clique(inst.graph, q):
        return False
    rest = inst.graph.remove_edges(q)
    return chromatic_index_at_most(rest, inst.t + inst.ell - 1, node_limit) is None
