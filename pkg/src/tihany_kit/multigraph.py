"""Loopless undirected multigraphs with stable edge identities."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

CANONICAL_MAX_VERTICES = 7


class GraphError(ValueError):
    """Invalid multigraph construction or query."""


@dataclass(frozen=True)
class GraphStats:
    max_degree: int
    tau: int
    omega_prime: int
    edge_count: int


@dataclass(frozen=True)
class Multigraph:
    """Immutable loopless multigraph.

    ``edges`` holds ``(edge_id, a, b)`` triples with ``a < b``, sorted by
    ``edge_id``.  Parallel edges are separate entries.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        normalized = []
        seen = set()
        for eid, a, b in self.edges:
            if a == b:
                raise GraphError(f"loop at vertex {a} (edge {eid})")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise GraphError(f"edge {eid} has endpoint outside 0..{self.vertex_count - 1}")
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            normalized.append((int(eid), min(a, b), max(a, b)))
        normalized.sort()
        object.__setattr__(self, "edges", tuple(normalized))

    # construction

    @classmethod
    def from_edge_list(
        cls, pairs: Iterable[tuple[int, int, int]], vertex_count: int | None = None
    ) -> Multigraph:
        """Build from ``(u, v, multiplicity)`` triples; edge ids follow input order."""
        pairs = list(pairs)
        edges = []
        eid = 0
        top = -1
        for u, v, m in pairs:
            if u < 0 or v < 0:
                raise GraphError(f"negative vertex in pair ({u}, {v})")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if m < 1:
                raise GraphError(f"multiplicity {m} < 1 for pair ({u}, {v})")
            top = max(top, u, v)
            for _ in range(m):
                edges.append((eid, u, v))
                eid += 1
        n = top + 1 if vertex_count is None else vertex_count
        if n <= top:
            raise GraphError(f"vertex_count {n} too small for vertex {top}")
        return cls(n, tuple(edges))

    @classmethod
    def from_matrix(cls, mult: np.ndarray) -> Multigraph:
        n = mult.shape[0]
        pairs = [(u, v, int(mult[u, v])) for u in range(n) for v in range(u + 1, n) if mult[u, v]]
        return cls.from_edge_list(pairs, vertex_count=n)

    # derived structure

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {eid: (a, b) for eid, a, b in self.edges}

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for eid, a, b in self.edges:
            inc[a].append(eid)
            inc[b].append(eid)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _pairs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for eid, a, b in self.edges:
            out.setdefault((a, b), []).append(eid)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def matrix(self) -> np.ndarray:
        """Symmetric multiplicity matrix."""
        mat = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for (a, b), ids in self._pairs.items():
            mat[a, b] = mat[b, a] = len(ids)
        return mat

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise GraphError(f"invalid vertex {v}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._incidence]

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            raise GraphError("multiplicity needs two distinct vertices")
        self._check_vertex(u)
        self._check_vertex(v)
        return len(self._pairs.get((min(u, v), max(u, v)), ()))

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        return {a if b == v else b for a, b in (self.endpoints[e] for e in self._incidence[v])}

    def edges_at(self, v: int) -> tuple[int, ...]:
        """E(v): ids of edges incident with ``v``."""
        self._check_vertex(v)
        return self._incidence[v]

    def edges_between(self, u: int, v: int) -> tuple[int, ...]:
        """E(uv): ids of the parallel edges joining ``u`` and ``v``."""
        return self._pairs.get((min(u, v), max(u, v)), ())

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.endpoints[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"edge {eid} is not incident with {v}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def max_multiplicity(self) -> int:
        return max((len(ids) for ids in self._pairs.values()), default=0)

    # operations

    def remove_edges(self, ids: Iterable[int]) -> Multigraph:
        ids = set(ids)
        unknown = ids - set(self.edge_ids)
        if unknown:
            raise GraphError(f"unknown edge ids {sorted(unknown)}")
        return Multigraph(self.vertex_count, tuple(e for e in self.edges if e[0] not in ids))

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        adj = [self.neighbors(v) for v in range(self.vertex_count)]
        for u in range(self.vertex_count):
            for v in sorted(x for x in adj[u] if x > u):
                for w in sorted(x for x in adj[v] if x > v):
                    if w in adj[u]:
                        out.append((u, v, w))
        return out

    def stats(self) -> GraphStats:
        mat = self.matrix
        tau = 0
        for u, v, w in self.triangles():
            tau = max(tau, int(mat[u, v] + mat[v, w] + mat[u, w]))
        max_degree = max(self.degrees(), default=0)
        return GraphStats(max_degree, tau, max(tau, max_degree), self.edge_count)

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components that carry at least one edge."""
        seen = [False] * self.vertex_count
        comps = []
        for start in range(self.vertex_count):
            if seen[start] or not self._incidence[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.neighbors(x):
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Iterable[int]) -> Multigraph:
        """Subgraph on ``vertices`` (relabelled 0..k-1 in sorted order), edge ids kept."""
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        edges = tuple((eid, pos[a], pos[b]) for eid, a, b in self.edges if a in pos and b in pos)
        return Multigraph(len(vs), edges)

    def edge_pairs(self) -> list[tuple[int, int, int]]:
        """``(u, v, m)`` triples in sorted pair order."""
        return [(a, b, len(ids)) for (a, b), ids in sorted(self._pairs.items())]

    def structurally_equal(self, other: Multigraph) -> bool:
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def relabel(self, perm: list[int]) -> Multigraph:
        """Move vertex ``v`` to ``perm[v]``; edge ids kept."""
        return Multigraph(self.vertex_count, tuple((eid, perm[a], perm[b]) for eid, a, b in self.edges))

    def canonical_key(self) -> bytes:
        """Isomorphism-class key (exact up to ``CANONICAL_MAX_VERTICES`` vertices).

        The key is the vertex count followed by the lexicographically least
        upper-triangle multiplicity vector over all vertex relabellings.  Larger
        graphs get a labelled key tagged with ``b"L"`` which is only equal for
        identically labelled graphs.
        """
        n = self.vertex_count
        if n > CANONICAL_MAX_VERTICES:
            body = np.array(self.edge_pairs(), dtype=np.uint16).tobytes()
            return b"L" + n.to_bytes(2, "big") + body
        return b"C" + n.to_bytes(2, "big") + canonical_vector(self.matrix).tobytes()

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.edges)


@lru_cache(maxsize=None)
def _perm_pair_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    iu, ju = np.triu_indices(n, 1)
    return perms, iu, ju


def canonical_vector(mat: np.ndarray) -> np.ndarray:
    """Least upper-triangle vector of ``mat`` under simultaneous row/column permutation."""
    n = mat.shape[0]
    if n < 2:
        return np.zeros(0, dtype=np.uint16)
    perms, iu, ju = _perm_pair_index(n)
    rows = mat[perms[:, iu], perms[:, ju]]
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]].astype(np.uint16)
