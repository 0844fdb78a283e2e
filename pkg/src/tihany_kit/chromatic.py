"""Exact chromatic index, classical bounds, colouring checks and Kempe chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import _kernels
from .multigraph import GraphError, Multigraph

DEFAULT_NODE_LIMIT = 10**7
MAX_PALETTE = 62

# edge_id -> colour (0-based int)
EdgeColoring = dict


class BudgetExceeded(RuntimeError):
    """The backtracking search hit its node limit before deciding."""

    def __init__(self, nodes: int, k: int):
        super().__init__(f"node limit exceeded after {nodes} nodes (k={k})")
        self.nodes = nodes
        self.k = k


class ColoringError(ValueError):
    pass


@dataclass
class SolverStats:
    nodes: int = 0
    calls: int = 0
    decided_by_bound: int = 0


@dataclass(frozen=True)
class Palette:
    colors: tuple[int, ...]

    @classmethod
    def range(cls, size: int, start: int = 0) -> Palette:
        return cls(tuple(range(start, start + size)))

    @property
    def base_size(self) -> int:
        return len(self.colors)

    def __post_init__(self) -> None:
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("palette colours must be distinct")


class Shape(Enum):
    PATH = "path"
    EVEN_CYCLE = "even_cycle"


@dataclass(frozen=True)
class KempeComponent:
    edge_ids: tuple[int, ...]
    shape: Shape
    colors: tuple[int, int]
    vertices: frozenset = field(default=frozenset())

    def __len__(self) -> int:
        return len(self.edge_ids)


# validation and queries


def validate(g: Multigraph, coloring: EdgeColoring) -> bool:
    """True iff no two coloured edges sharing an endpoint carry the same colour."""
    for v in range(g.vertex_count):
        seen = set()
        for eid in g.edges_at(v):
            c = coloring.get(eid)
            if c is None:
                continue
            if c in seen:
                return False
            seen.add(c)
    return True


def colors_at(g: Multigraph, coloring: EdgeColoring, x: int) -> set[int]:
    return {coloring[e] for e in g.edges_at(x) if e in coloring}


def missing_colors(g: Multigraph, coloring: EdgeColoring, x: int, palette: Palette) -> set[int]:
    """Palette colours not present on coloured edges at ``x``."""
    present = colors_at(g, coloring, x)
    return {c for c in palette.colors if c not in present}


def colors_used(coloring: EdgeColoring) -> int:
    return len(set(coloring.values()))


# bounds


def shannon_upper(g: Multigraph) -> int:
    return 3 * g.stats().max_degree // 2


def vizing_upper(g: Multigraph) -> int:
    return g.stats().max_degree + g.max_multiplicity()


def lower_bound(g: Multigraph) -> int:
    """max(Δ, τ, ⌈|E| / ⌊|V|/2⌋⌉)."""
    st = g.stats()
    bound = max(st.max_degree, st.tau)
    if g.vertex_count >= 2 and g.edge_count:
        bound = max(bound, -(-g.edge_count // (g.vertex_count // 2)))
    return bound


def density_bound(g: Multigraph, max_vertices: int = 14) -> int:
    """Odd-set density bound max ⌈|E(W)| / ((|W|-1)/2)⌉ over odd W, |W| ≥ 3.

    Every colour class is a matching and covers at most (|W|-1)/2 edges inside
    an odd set W.  Skipped (returns 0) above ``max_vertices`` vertices.
    """
    n = g.vertex_count
    if n < 3 or n > max_vertices or not g.edge_count:
        return 0
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    sizes = bits.sum(axis=1)
    keep = (sizes >= 3) & (sizes % 2 == 1)
    bits = bits[keep]
    sizes = sizes[keep]
    inside = np.zeros(len(bits), dtype=np.int64)
    for a, b, m in g.edge_pairs():
        inside += m * (bits[:, a] & bits[:, b])
    cap = (sizes - 1) // 2
    return int((-(-inside // cap)).max(initial=0))


# exact search


def _search_order(g: Multigraph) -> list[int]:
    """Edges by descending line-graph degree, parallel classes kept contiguous.

    Among classes of equal degree, ones touching already-ordered vertices
    come first so that constraints propagate early.
    """
    deg = g.degrees()
    remaining = {(a, b): g.edges_between(a, b) for a, b, _ in g.edge_pairs()}
    touched: set[int] = set()
    order: list[int] = []
    while remaining:
        best = min(
            remaining,
            key=lambda p: (
                -(p[0] in touched) - (p[1] in touched),
                -(deg[p[0]] + deg[p[1]] - 2 + len(remaining[p])),
                p,
            ),
        )
        order.extend(remaining.pop(best))
        touched.update(best)
    return order


def _component_graphs(g: Multigraph) -> list[Multigraph]:
    comps = g.components()
    if len(comps) == 1 and len(comps[0]) == g.vertex_count:
        return [g]
    return [g.induced(c) for c in comps]


def _color_component(
    g: Multigraph, k: int, node_limit: int, stats: SolverStats
) -> Optional[EdgeColoring]:
    stats.calls += 1
    if k < lower_bound(g) or k < density_bound(g):
        stats.decided_by_bound += 1
        return None
    order = _search_order(g)
    ends = g.endpoints
    eu = np.array([ends[e][0] for e in order], dtype=np.int64)
    ev = np.array([ends[e][1] for e in order], dtype=np.int64)
    par = np.zeros(len(order), dtype=np.bool_)
    for i in range(1, len(order)):
        par[i] = ends[order[i]] == ends[order[i - 1]]
    status, cols, nodes = _kernels.edge_coloring_search(
        np.int64(g.vertex_count), eu, ev, par, np.int64(k), np.int64(node_limit)
    )
    stats.nodes += int(nodes)
    if status == _kernels.BUDGET:
        raise BudgetExceeded(int(nodes), k)
    if status == _kernels.EXHAUSTED:
        return None
    return {e: int(c) for e, c in zip(order, cols)}


def chromatic_index_at_most(
    g: Multigraph,
    k: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
    stats: SolverStats | None = None,
) -> Optional[EdgeColoring]:
    """A proper edge colouring with colours ``0..k-1``, or ``None`` if none exists.

    Raises :class:`BudgetExceeded` when a component's search is cut off; that is
    never reported as ``None``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > MAX_PALETTE:
        raise ValueError(f"palettes above {MAX_PALETTE} colours are not supported")
    stats = stats if stats is not None else SolverStats()
    result: EdgeColoring = {}
    for comp in _component_graphs(g):
        part = _color_component(comp, k, node_limit, stats)
        if part is None:
            return None
        result.update(part)
    if not validate(g, result) or len(result) != g.edge_count:
        raise ColoringError("solver produced an invalid colouring")
    return result


def chromatic_index(
    g: Multigraph,
    node_limit: int = DEFAULT_NODE_LIMIT,
    stats: SolverStats | None = None,
    want_coloring: bool = False,
):
    """Least ``k`` admitting a proper ``k``-edge-colouring (0 for edgeless graphs).

    With ``want_coloring`` returns ``(k, coloring)``.
    """
    stats = stats if stats is not None else SolverStats()
    best = 0
    coloring: EdgeColoring = {}
    for comp in _component_graphs(g):
        k = max(lower_bound(comp), density_bound(comp))
        upper = min(3 * comp.stats().max_degree // 2, vizing_upper(comp))
        while True:
            if k > upper:
                raise ColoringError(f"no colouring found up to the upper bound {upper}")
            part = _color_component(comp, k, node_limit, stats)
            if part is not None:
                break
            k += 1
        best = max(best, k)
        coloring.update(part)
    if want_coloring:
        return best, coloring
    return best


# Kempe chains


def kempe_component(
    g: Multigraph, coloring: EdgeColoring, c: int, alpha: int, x: int
) -> KempeComponent:
    """Component containing ``x`` of the subgraph formed by edges coloured ``c`` or ``alpha``."""
    if c == alpha:
        raise ValueError("Kempe chain needs two distinct colours")
    g._check_vertex(x)
    pair = (c, alpha)

    def step(vertex: int, color: int, skip: int | None) -> int | None:
        for e in g.edges_at(vertex):
            if e != skip and coloring.get(e) == color:
                return e
        return None

    at_x = [e for e in g.edges_at(x) if coloring.get(e) in pair]
    if not at_x:
        return KempeComponent((), Shape.PATH, pair, frozenset({x}))

    def walk(first: int) -> tuple[list[int], bool]:
        seq = [first]
        vertex = g.other_end(first, x)
        color = coloring[first]
        while True:
            color = alpha if color == c else c
            nxt = step(vertex, color, seq[-1])
            if nxt is None:
                return seq, False
            if nxt == seq[0]:
                return seq, True
            seq.append(nxt)
            vertex = g.other_end(nxt, vertex)

    seq, closed = walk(at_x[0])
    if closed:
        shape = Shape.EVEN_CYCLE
        edges = seq
    elif len(at_x) == 2:
        back, _ = walk(at_x[1])
        edges = back[::-1] + seq
        shape = Shape.PATH
    else:
        edges = seq
        shape = Shape.PATH
    verts = set()
    for e in edges:
        verts.update(g.endpoints[e])
    return KempeComponent(tuple(edges), shape, pair, frozenset(verts))


def kempe_swap(g: Multigraph, coloring: EdgeColoring, comp: KempeComponent) -> EdgeColoring:
    """Exchange the component's two colours on its edges; returns a new colouring."""
    c, alpha = comp.colors
    if comp.edge_ids:
        start = next(iter(comp.vertices))
        fresh = kempe_component(g, coloring, c, alpha, start)
        if set(fresh.edge_ids) != set(comp.edge_ids):
            raise ColoringError("not a (c, alpha) component of this colouring")
    out = dict(coloring)
    for e in comp.edge_ids:
        out[e] = alpha if coloring[e] == c else c
    return out


# serialization


def coloring_to_text(coloring: EdgeColoring, palette_size: int) -> str:
    lines = [f"palette {palette_size}"]
    lines += [f"{e} {c}" for e, c in sorted(coloring.items())]
    return "\n".join(lines) + "\n"


def coloring_from_text(text: str) -> tuple[EdgeColoring, int]:
    palette = None
    out: EdgeColoring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "palette":
            if len(parts) != 2:
                raise ColoringError(f"line {lineno}: malformed palette header")
            palette = int(parts[1])
            continue
        if len(parts) != 2:
            raise ColoringError(f"line {lineno}: expected 'edge_id color'")
        e, c = int(parts[0]), int(parts[1])
        if e in out:
            raise ColoringError(f"line {lineno}: edge {e} coloured twice")
        out[e] = c
    if palette is None:
        raise ColoringError("missing 'palette <size>' header")
    if any(not 0 <= c < palette for c in out.values()):
        raise ColoringError("colour outside palette")
    return out, palette


__all__ = [
    "BudgetExceeded",
    "ColoringError",
    "EdgeColoring",
    "GraphError",
    "KempeComponent",
    "Palette",
    "Shape",
    "SolverStats",
    "chromatic_index",
    "chromatic_index_at_most",
    "colors_at",
    "density_bound",
    "kempe_component",
    "kempe_swap",
    "lower_bound",
    "missing_colors",
    "shannon_upper",
    "validate",
]
