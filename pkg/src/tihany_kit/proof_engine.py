"""Try to extend a (t+ell-1)-edge-colouring of G - S_v to an (s+t-2)-colouring of G.

The moves are the ones used to rule out minimal counterexamples: pick a pivot
of maximum degree, take S_v round-robin over its neighbours, colour most of
S_v with fresh colours, then place the rest with colours missing at the pivot,
freeing blocked endpoints via a Hall matching on a helper bipartite graph or
by Kempe-chain swaps.  The engine is best effort; a ``failed`` outcome does
not mean no colouring exists.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .chromatic import (
    DEFAULT_NODE_LIMIT,
    EdgeColoring,
    Palette,
    chromatic_index_at_most,
    colors_at,
    kempe_component,
    validate,
)
from .multigraph import GraphError, Multigraph
from .tihany import admissible_floor

log = logging.getLogger(__name__)


class SplitStrategy(str, Enum):
    SPREAD_NEIGHBORS = "spread"
    SINGLE_STAR = "single-star"
    HALF_FILL = "half-fill"


DEFAULT_STRATEGIES = (SplitStrategy.SPREAD_NEIGHBORS, SplitStrategy.SINGLE_STAR, SplitStrategy.HALF_FILL)


class InfeasibleSplit(ValueError):
    pass


class RepairError(RuntimeError):
    """A matching repair produced an improper colouring."""


@dataclass(frozen=True)
class PivotSelection:
    v: int
    neighbor_order: tuple[int, ...]
    s_v: tuple[int, ...]
    picked: dict  # neighbour -> tuple of chosen edge ids, in pick order

    def count(self, u: int) -> int:
        return len(self.picked.get(u, ()))

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(self.count(u) for u in self.neighbor_order)

    @property
    def covered(self) -> tuple[int, ...]:
        """V_{S_v}: neighbours contributing at least one edge."""
        return tuple(u for u in self.neighbor_order if self.count(u))


@dataclass(frozen=True)
class PaletteSplit:
    v: int
    s0: tuple[int, ...]
    t0: dict  # edge id -> fresh colour
    c_colors: tuple[int, ...]  # one per entry of ``left``
    pending: tuple[int, ...] = ()

    @property
    def left(self) -> tuple[int, ...]:
        """Edges still to place with c-colours: S_0 plus any pending edge."""
        return self.s0 + self.pending


@dataclass(frozen=True)
class HelperBipartite:
    left: tuple[int, ...]
    right: tuple[int, ...]
    adjacency: dict  # left edge -> tuple of right edges

    def degree(self, e: int) -> int:
        return len(self.adjacency[e])


@dataclass(frozen=True)
class Matching:
    pairs: dict  # left -> right

    def saturates(self, left) -> bool:
        return all(e in self.pairs for e in left)


@dataclass(frozen=True)
class ViolatingSet:
    members: tuple[int, ...]
    neighborhood: tuple[int, ...]
    matching: dict  # a maximum matching, for partial repairs


@dataclass
class ExtensionOutcome:
    result: str  # "extended" | "failed"
    coloring: Optional[EdgeColoring]
    trace: list = field(default_factory=list)
    reason: str = ""

    @property
    def extended(self) -> bool:
        return self.result == "extended"

    def to_json(self) -> dict:
        return {
            "result": self.result,
            "reason": self.reason,
            "coloring": None if self.coloring is None else {str(e): c for e, c in sorted(self.coloring.items())},
            "trace": self.trace,
        }


# pivot and S_v


def choose_pivot(g: Multigraph) -> int:
    if not g.edge_count:
        raise GraphError("pivot needs at least one edge")
    return min(range(g.vertex_count), key=lambda x: (-g.degree(x), -len(g.neighbors(x)), x))


def neighbor_order(g: Multigraph, v: int) -> tuple[int, ...]:
    return tuple(sorted(g.neighbors(v), key=lambda u: (-g.multiplicity(v, u), u)))


def select_S_v(g: Multigraph, v: int, s: int) -> PivotSelection:
    """Round-robin over E(vv_1), ..., E(vv_d) until ``s`` edges are taken."""
    if s > g.degree(v):
        raise ValueError(f"s = {s} exceeds d({v}) = {g.degree(v)}")
    order = neighbor_order(g, v)
    pools = {u: list(g.edges_between(v, u)) for u in order}
    picked: dict[int, list[int]] = {u: [] for u in order}
    chosen: list[int] = []
    while len(chosen) < s:
        for u in order:
            if len(chosen) == s:
                break
            if len(picked[u]) < len(pools[u]):
                e = pools[u][len(picked[u])]
                picked[u].append(e)
                chosen.append(e)
    return PivotSelection(v, order, tuple(chosen), {u: tuple(p) for u, p in picked.items() if p})


# palette split


def _assign_fresh(sel: PivotSelection, t0_edges: list[int], first_fresh: int) -> dict:
    """Fresh colours: one edge per distinct neighbour first, then by edge id."""
    remaining = set(t0_edges)
    ordered = []
    for u in sel.neighbor_order:
        for e in sel.picked.get(u, ()):
            if e in remaining:
                ordered.append(e)
                remaining.discard(e)
                break
    ordered += sorted(remaining)
    return {e: first_fresh + i for i, e in enumerate(ordered)}


def split_palette(
    g: Multigraph,
    sel: PivotSelection,
    ell: int,
    coloring: EdgeColoring,
    strategy: SplitStrategy,
    base: Palette,
) -> PaletteSplit:
    s = len(sel.s_v)
    n_fresh = s - ell - 1
    if n_fresh < 0:
        raise InfeasibleSplit(f"s = {s} leaves no room for ell + 1 = {ell + 1} edges")
    strategy = SplitStrategy(strategy)
    pending: tuple[int, ...] = ()
    if strategy is SplitStrategy.SPREAD_NEIGHBORS:
        # last-picked edge of each neighbour, cycling, so T_0 keeps every neighbour
        columns = [list(reversed(sel.picked[u])) for u in sel.covered]
        s0 = []
        for layer in itertools.count():
            if len(s0) == ell + 1:
                break
            progressed = False
            for col in columns:
                if layer < len(col) and len(s0) < ell + 1:
                    s0.append(col[layer])
                    progressed = True
            if not progressed:
                break
    elif strategy is SplitStrategy.SINGLE_STAR:
        first = sel.picked[sel.neighbor_order[0]]
        if len(first) < ell + 1:
            raise InfeasibleSplit(f"s(vv_1) = {len(first)} < ell + 1 = {ell + 1}")
        s0 = list(first[-(ell + 1):]) if ell + 1 else []
    else:
        s0 = _half_fill(sel, ell)
        rest = [e for e in sel.s_v if e not in s0]
        # leave the extra edge on the neighbour that would otherwise dominate T_0
        by_nbr = {u: [e for e in sel.picked[u] if e in rest] for u in sel.covered}
        heavy = max(sel.covered, key=lambda u: (len(by_nbr[u]), -sel.neighbor_order.index(u)))
        pending = (by_nbr[heavy][-1],)
    s0 = tuple(s0)
    t0_edges = [e for e in sel.s_v if e not in s0 and e not in pending]
    fresh = _assign_fresh(sel, t0_edges, max(base.colors, default=-1) + 1)
    missing = sorted(set(base.colors) - colors_at(g, coloring, sel.v))
    need = len(s0) + len(pending)
    if len(missing) < need:
        raise InfeasibleSplit(f"only {len(missing)} colours missing at the pivot, need {need}")
    return PaletteSplit(sel.v, s0, fresh, tuple(missing[:need]), pending)


def _half_fill(sel: PivotSelection, ell: int) -> list[int]:
    counts = [sel.count(u) for u in sel.neighbor_order]
    if counts[0] == ell:
        return list(sel.picked[sel.neighbor_order[0]])
    prefix = 0
    i0 = None
    for i, c in enumerate(counts):
        if prefix <= ell - 1 and prefix + c >= ell:
            i0 = i
            break
        prefix += c
    if i0 is None:
        raise InfeasibleSplit("S_v has fewer than ell edges")
    head = sel.neighbor_order[: i0 + 1]
    take = {u: sel.count(u) // 2 for u in head}
    if sum(take.values()) > ell:
        raise InfeasibleSplit("half of the leading neighbours already exceeds ell")
    while sum(take.values()) < ell:
        u = max(head, key=lambda x: (sel.count(x) - take[x], -head.index(x)))
        if take[u] >= sel.count(u):
            raise InfeasibleSplit("leading neighbours cannot supply ell edges")
        take[u] += 1
    return [e for u in head for e in sel.picked[u][: take[u]]]


# helper bipartite graph and Hall matchings


def _color_edge_at(g: Multigraph, coloring: EdgeColoring, x: int, c: int) -> Optional[int]:
    for e in g.edges_at(x):
        if coloring.get(e) == c:
            return e
    return None


def build_helper(g: Multigraph, coloring: EdgeColoring, split: PaletteSplit) -> HelperBipartite:
    """e_i ~ e_alpha iff no c_i-coloured edge meets both far endpoints."""
    right = tuple(sorted(split.t0, key=split.t0.get))
    adj = {}
    for e, c in zip(split.left, split.c_colors):
        x = g.other_end(e, split.v)
        blocker = _color_edge_at(g, coloring, x, c)
        if blocker is None:
            adj[e] = right
            continue
        ends = set(g.endpoints[blocker])
        adj[e] = tuple(f for f in right if g.other_end(f, split.v) not in ends)
    return HelperBipartite(split.left, right, adj)


def _max_matching(t: HelperBipartite) -> dict:
    match_right: dict = {}

    def augment(u, seen) -> bool:
        for w in t.adjacency[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_right or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    for u in t.left:
        augment(u, set())
    return {u: w for w, u in match_right.items()}


def _deficient(t: HelperBipartite, members) -> bool:
    nb = set()
    for u in members:
        nb.update(t.adjacency[u])
    return len(nb) < len(members)


def _saturable(t: HelperBipartite, members) -> bool:
    sub = HelperBipartite(tuple(members), t.right, t.adjacency)
    return len(_max_matching(sub)) == len(members)


def hall_matching(t: HelperBipartite) -> Matching | ViolatingSet:
    """A matching saturating the left side, or an inclusion-minimal Hall violator."""
    pairs = _max_matching(t)
    unmatched = [u for u in t.left if u not in pairs]
    if not unmatched:
        return Matching(pairs)
    # alternating-path closure from an unmatched left vertex: |N(W)| = |W| - 1
    match_right = {w: u for u, w in pairs.items()}
    members = {unmatched[0]}
    frontier = [unmatched[0]]
    while frontier:
        u = frontier.pop()
        for w in t.adjacency[u]:
            partner = match_right.get(w)
            if partner is not None and partner not in members:
                members.add(partner)
                frontier.append(partner)
    # drop members while the rest still has no saturating matching; once every
    # W - {u} is saturable, no proper subset of W violates Hall
    shrunk = True
    while shrunk:
        shrunk = False
        for u in sorted(members, key=t.left.index):
            smaller = members - {u}
            if smaller and not _saturable(t, [x for x in t.left if x in smaller]):
                members = smaller
                shrunk = True
                break
    assert _deficient(t, members)
    ordered = tuple(u for u in t.left if u in members)
    nb = sorted({w for u in ordered for w in t.adjacency[u]}, key=t.right.index)
    return ViolatingSet(ordered, tuple(nb), pairs)


# repairs


def apply_matching_repair(
    g: Multigraph,
    coloring: EdgeColoring,
    split: PaletteSplit,
    matching: Matching | dict,
    only: tuple[int, ...] | None = None,
    trace: list | None = None,
) -> EdgeColoring:
    """Colour each e_i with c_i, moving its blocker to the matched fresh colour.

    ``only`` restricts the repair to a subset of the left side (partial repair
    after a Hall violation).
    """
    pairs = matching.pairs if isinstance(matching, Matching) else matching
    out = dict(coloring)
    todo = split.left if only is None else only
    cmap = dict(zip(split.left, split.c_colors))
    for e in todo:
        c = cmap[e]
        x = g.other_end(e, split.v)
        blocker = _color_edge_at(g, out, x, c)
        if blocker is not None:
            fresh = split.t0[pairs[e]]
            out[blocker] = fresh
            _log_assign(trace, blocker, fresh, "move blocker to matched fresh colour")
        out[e] = c
        _log_assign(trace, e, c, "place S_0 edge")
    if not validate(g, out):
        raise RepairError("matching repair broke properness")
    return out


def available_pair_colors(
    g: Multigraph, coloring: EdgeColoring, x: int, y: int, palette: Palette, pivot: int
) -> set[int]:
    """Palette colours absent from the pivot's coloured edges and from E(xy)."""
    used = colors_at(g, coloring, pivot)
    used |= {coloring[e] for e in g.edges_between(x, y) if e in coloring}
    return set(palette.colors) - used


def _log_assign(trace, e, c, why) -> None:
    if trace is not None:
        trace.append({"op": "assign", "edge": e, "color": c, "why": why})


def _swap(g, coloring, comp, trace, why) -> EdgeColoring:
    out = dict(coloring)
    c, a = comp.colors
    for e in comp.edge_ids:
        out[e] = a if coloring[e] == c else c
    if trace is not None:
        trace.append(
            {"op": "kempe_swap", "colors": [c, a], "edges": list(comp.edge_ids), "shape": comp.shape.value, "why": why}
        )
    return out


def _free(g, coloring, x, palette_size) -> list[int]:
    present = colors_at(g, coloring, x)
    return [c for c in range(palette_size) if c not in present]


def _place_edge(g, coloring, e, prefer, palette_size, trace, palette: Palette, pivot: int) -> Optional[EdgeColoring]:
    """Place one uncoloured edge, swapping a Kempe chain if needed."""
    a, b = g.endpoints[e]
    free_a = set(_free(g, coloring, a, palette_size))
    free_b = set(_free(g, coloring, b, palette_size))
    common = free_a & free_b
    if common:
        c = prefer if prefer in common else min(common)
        out = dict(coloring)
        out[e] = c
        _log_assign(trace, e, c, "colour free at both ends")
        return out
    # Kempe step: bring a colour free at one end to the other end
    for x, y, free_x, free_y in ((b, a, free_b, free_a), (a, b, free_a, free_b)):
        wanted = sorted(free_y, key=lambda c: (c != prefer, c))
        pair_first = available_pair_colors(g, coloring, x, y, palette, pivot)
        for c in wanted:
            others = sorted(free_x, key=lambda k: (k not in pair_first, k))
            for beta in others:
                comp = kempe_component(g, coloring, c, beta, x)
                if y in comp.vertices:
                    continue
                swapped = _swap(g, coloring, comp, None, "")
                if c in colors_at(g, swapped, x) or c in colors_at(g, swapped, y):
                    continue
                out = _swap(g, coloring, comp, trace, f"free colour {c} at {x}")
                out[e] = c
                _log_assign(trace, e, c, "colour after Kempe swap")
                return out
    return None


def _claim3_bookkeeping(g, coloring, split, sel, violation: ViolatingSet, palette_size) -> dict:
    v1 = sel.neighbor_order[0]
    cmap = dict(zip(split.left, split.c_colors))
    free_v1 = set(_free(g, coloring, v1, palette_size))
    k = sum(1 for e in split.left if cmap[e] in free_v1)
    p = len(split.left) - k
    q = len(violation.members)
    matched = len(violation.matching)
    info = {"p": p, "k": k, "q": q, "q_prime": len(split.t0) - matched}
    blocked = violation.members[0]
    x = g.other_end(blocked, split.v)
    blocker = _color_edge_at(g, coloring, x, cmap[blocked])
    if blocker is not None:
        vj = g.other_end(blocker, x)
        if vj != split.v:
            a_set = set(range(palette_size)) - colors_at(g, coloring, split.v)
            a_set -= {coloring[e] for e in g.edges_between(x, vj) if e in coloring}
            info.update({"v_j": vj, "r": len(a_set), "A": sorted(a_set)})
            info["ell_prime"] = sum(sel.count(u) for u in sel.neighbor_order if u not in (x, vj))
    return info


def attempt_extension(
    g: Multigraph,
    s: int,
    t: int,
    ell: int,
    strategies=DEFAULT_STRATEGIES,
    node_limit: int = DEFAULT_NODE_LIMIT,
    max_rounds: int | None = None,
) -> ExtensionOutcome:
    if s > t:
        raise ValueError("expects s <= t")
    lo = admissible_floor(ell)
    if s < lo or t < lo:
        raise ValueError(f"s, t must be at least {lo} for ell = {ell}")
    if s + t - 1 <= g.stats().omega_prime:
        raise ValueError("needs s + t - 1 > omega'(G)")
    palette_size = s + t - 2
    base = Palette.range(t + ell - 1)
    full = Palette.range(palette_size)
    trace: list = []

    def failed(reason: str) -> ExtensionOutcome:
        trace.append({"step": "failed", "reason": reason})
        return ExtensionOutcome("failed", None, trace, reason)

    v = choose_pivot(g)
    trace.append({"step": "pivot", "v": v, "degree": g.degree(v), "neighbors": len(g.neighbors(v))})
    if s > g.degree(v):
        return failed(f"s = {s} exceeds the maximum degree {g.degree(v)}")
    sel = select_S_v(g, v, s)
    trace.append({"step": "select_S_v", "S_v": list(sel.s_v), "order": list(sel.neighbor_order), "counts": list(sel.counts)})
    residual = g.remove_edges(sel.s_v)
    phi = chromatic_index_at_most(residual, base.base_size, node_limit)
    if phi is None:
        return _full_palette_fallback(g, sel, residual, palette_size, full, node_limit, trace, failed)
    trace.append({"step": "residual", "coloring": {str(e): c for e, c in sorted(phi.items())}})
    missing = sorted(set(base.colors) - colors_at(g, phi, v))
    trace.append({"step": "missing_at_pivot", "colors": missing, "floor": t + ell - 1 - (g.degree(v) - s)})

    def finish(col: EdgeColoring, how: str) -> ExtensionOutcome:
        if len(col) != g.edge_count or not validate(g, col):
            raise RepairError("extension produced an invalid colouring")
        if any(not 0 <= c < palette_size for c in col.values()):
            raise RepairError("extension used a colour outside the palette")
        trace.append({"step": "extended", "how": how, "colors_used": len(set(col.values()))})
        return ExtensionOutcome("extended", col, trace)

    # no extension pressure: place S_v greedily
    greedy = dict(phi)
    greedy_ok = True
    for e in sel.s_v:
        a, b = g.endpoints[e]
        busy = colors_at(g, greedy, a) | colors_at(g, greedy, b)
        free = [c for c in range(palette_size) if c not in busy]
        if not free:
            greedy_ok = False
            break
        greedy[e] = free[0]
    if greedy_ok:
        for e in sel.s_v:
            _log_assign(trace, e, greedy[e], "greedy")
        return finish(greedy, "greedy")
    trace.append({"step": "greedy_blocked"})

    rounds = max_rounds if max_rounds is not None else 4 * (ell + 2)
    for strategy in strategies:
        strategy = SplitStrategy(strategy)
        try:
            split = split_palette(g, sel, ell, phi, strategy, base)
        except InfeasibleSplit as exc:
            trace.append({"step": "split_infeasible", "strategy": strategy.value, "why": str(exc)})
            continue
        trace.append({"op": "reset", "coloring": {str(e): c for e, c in sorted(phi.items())}})
        trace.append(
            {
                "step": "split",
                "strategy": strategy.value,
                "S_0": list(split.s0),
                "pending": list(split.pending),
                "T_0": {str(e): a for e, a in split.t0.items()},
                "c": list(split.c_colors),
            }
        )
        col = dict(phi)
        for e, a in split.t0.items():
            col[e] = a
            _log_assign(trace, e, a, "fresh colour on T_0")
        todo = list(split.left)
        for _ in range(rounds):
            if not todo:
                break
            # a fresh colour already moved onto a blocker is spent
            spent = {a for a in split.t0.values() if sum(1 for c in col.values() if c == a) > 1}
            live_t0 = {e: a for e, a in split.t0.items() if a not in spent}
            sub = PaletteSplit(v, tuple(e for e in split.s0 if e in todo), live_t0,
                               tuple(c for e, c in zip(split.left, split.c_colors) if e in todo),
                               tuple(e for e in split.pending if e in todo))
            helper = build_helper(g, col, sub)
            trace.append({"step": "helper", "degrees": {str(e): helper.degree(e) for e in helper.left}})
            found = hall_matching(helper)
            if isinstance(found, Matching):
                trace.append({"step": "hall_matching", "pairs": {str(a): b for a, b in found.pairs.items()}})
                col = apply_matching_repair(g, col, sub, found, trace=trace)
                todo = []
                break
            trace.append(
                {
                    "step": "hall_violation",
                    "W": list(found.members),
                    "N(W)": list(found.neighborhood),
                    "bookkeeping": _claim3_bookkeeping(g, col, sub, sel, found, palette_size),
                }
            )
            matched = tuple(e for e in sub.left if e in found.matching)
            if matched:
                col = apply_matching_repair(g, col, sub, found.matching, only=matched, trace=trace)
            todo = [e for e in todo if e not in matched]
            cmap = dict(zip(split.left, split.c_colors))
            progress = False
            for e in list(todo):
                placed = _place_edge(g, col, e, cmap[e], palette_size, trace, full, v)
                if placed is not None:
                    col = placed
                    todo.remove(e)
                    progress = True
            if not progress and not matched:
                break
        if not todo:
            return finish(col, strategy.value)
        trace.append({"step": "strategy_failed", "strategy": strategy.value, "uncoloured": todo})
    return failed("no strategy completed the extension")


def _full_palette_fallback(g, sel, residual, palette_size, full, node_limit, trace, failed) -> ExtensionOutcome:
    """G - S_v has no (t+ell-1)-colouring: colour it with all s+t-2 colours, then place S_v."""
    trace.append({"step": "residual_too_large", "palette": palette_size})
    phi = chromatic_index_at_most(residual, palette_size, node_limit)
    if phi is None:
        return failed(f"G - S_v has no {palette_size}-edge-colouring")
    trace.append({"step": "residual", "fallback": True, "coloring": {str(e): c for e, c in sorted(phi.items())}})
    col = phi
    for e in sel.s_v:
        placed = _place_edge(g, col, e, 0, palette_size, trace, full, sel.v)
        if placed is None:
            return failed(f"could not place edge {e} of S_v on the full palette")
        col = placed
    if len(col) != g.edge_count or not validate(g, col) or any(not 0 <= c < palette_size for c in col.values()):
        raise RepairError("fallback produced an invalid colouring")
    trace.append({"step": "extended", "how": "full-palette", "colors_used": len(set(col.values()))})
    return ExtensionOutcome("extended", col, trace)


def replay(trace: list) -> Optional[EdgeColoring]:
    """Rebuild the final colouring from a trace's recolouring steps."""
    col: Optional[EdgeColoring] = None
    for entry in trace:
        if entry.get("step") == "residual" or entry.get("op") == "reset":
            col = {int(e): c for e, c in entry["coloring"].items()}
        elif entry.get("op") == "assign":
            col[entry["edge"]] = entry["color"]
        elif entry.get("op") == "kempe_swap":
            c, a = entry["colors"]
            for e in entry["edges"]:
                col[e] = a if col[e] == c else c
    return col
