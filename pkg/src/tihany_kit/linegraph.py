"""Line graphs, a brute-force clique oracle, and structured clique enumeration.

Every clique of L(G) for a loopless multigraph G lives inside a star E(v) or
a triangle support E(uv) ∪ E(vw) ∪ E(uw); :func:`cliques_of_size` streams
the s-subsets of those supports.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .multigraph import Multigraph

ORACLE_MAX_VERTICES = 24


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    adjacency: tuple[frozenset, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for v, nb in enumerate(self.adjacency):
            if v in nb:
                raise ValueError(f"self-adjacency at {v}")
            for u in nb:
                if v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric adjacency {v}-{u}")

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def bitmasks(self) -> np.ndarray:
        out = np.zeros(self.vertex_count, dtype=np.int64)
        for v, nb in enumerate(self.adjacency):
            for u in nb:
                out[v] |= np.int64(1) << u
        return out


@dataclass(frozen=True)
class CliqueSupport:
    kind: Literal["star", "triangle"]
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_ids)


@dataclass(frozen=True)
class Clique:
    support: CliqueSupport
    edge_ids: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edge_ids)


def build_line_graph(g: Multigraph) -> SimpleGraph:
    """One vertex per edge (in edge-id order); adjacency = shared endpoint."""
    ids = g.edge_ids
    pos = {e: i for i, e in enumerate(ids)}
    adj: list[set[int]] = [set() for _ in ids]
    for v in range(g.vertex_count):
        at = [pos[e] for e in g.edges_at(v)]
        for a, b in itertools.combinations(at, 2):
            adj[a].add(b)
            adj[b].add(a)
    return SimpleGraph(len(ids), tuple(frozenset(x) for x in adj), tuple(ids))


def max_clique_bruteforce(h: SimpleGraph) -> int:
    if h.vertex_count > ORACLE_MAX_VERTICES:
        raise ValueError(f"clique oracle capped at {ORACLE_MAX_VERTICES} vertices")
    return int(_kernels.max_clique_size(h.bitmasks()))


def chromatic_number_bruteforce(h: SimpleGraph) -> int:
    """Vertex chromatic number by exhaustive assignment (oracle scale only)."""
    if h.vertex_count > ORACLE_MAX_VERTICES:
        raise ValueError(f"colouring oracle capped at {ORACLE_MAX_VERTICES} vertices")
    return int(_kernels.chromatic_number_exhaustive(h.bitmasks()))


def clique_supports(g: Multigraph) -> list[CliqueSupport]:
    """Stars E(v) for every non-isolated v, then one support per triangle."""
    out = [
        CliqueSupport("star", (v,), tuple(sorted(g.edges_at(v))))
        for v in range(g.vertex_count)
        if g.degree(v)
    ]
    for u, v, w in g.triangles():
        ids = g.edges_between(u, v) + g.edges_between(v, w) + g.edges_between(u, w)
        out.append(CliqueSupport("triangle", (u, v, w), tuple(sorted(ids))))
    return out


def search_order(g: Multigraph, supports: list[CliqueSupport] | None = None) -> list[CliqueSupport]:
    """Stars by descending degree (then vertex), followed by triangles."""
    supports = clique_supports(g) if supports is None else supports
    stars = [s for s in supports if s.kind == "star"]
    tris = [s for s in supports if s.kind == "triangle"]
    stars.sort(key=lambda s: (-len(s), s.vertices))
    return stars + tris


def cliques_of_size(
    g: Multigraph, s: int, supports: list[CliqueSupport] | None = None
) -> Iterator[Clique]:
    """Every s-clique of L(G) exactly once, lazily.

    A subset shared by several supports is reported under the first support
    in :func:`search_order`; no global seen-set is kept.
    """
    if s < 1:
        raise ValueError("clique size must be at least 1")
    ordered = search_order(g, supports)
    big = [sup for sup in ordered if len(sup) >= s]
    earlier: list[frozenset] = []
    for sup in big:
        for subset in itertools.combinations(sup.edge_ids, s):
            if earlier:
                chosen = frozenset(subset)
                if any(chosen <= prev for prev in earlier):
                    continue
            yield Clique(sup, subset)
        earlier.append(frozenset(sup.edge_ids))


def is_clique(g: Multigraph, edge_ids) -> bool:
    ends = g.endpoints
    for a, b in itertools.combinations(edge_ids, 2):
        if not set(ends[a]) & set(ends[b]):
            return False
    return True
