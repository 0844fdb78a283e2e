"""Test families of multigraphs, including exhaustive isomorphism-class enumeration."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from ..multigraph import Multigraph

ENUMERATE_CAP = (5, 10, 3)

_PETERSEN_OUTER = [(i, (i + 1) % 5) for i in range(5)]
_PETERSEN_SPOKES = [(i, i + 5) for i in range(5)]
_PETERSEN_INNER = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]


@dataclass(frozen=True)
class FamilySpec:
    """``kind`` plus its integer/float parameters.

    Kinds: ``shannon(k)``, ``multicycle(n, k)``, ``petersen()``,
    ``petersen-mult(k)`` (every edge k-fold), ``petersen-outer(k)`` (outer
    5-cycle k-fold), ``random(n, max_mult, edge_prob, seed[, count])`` and
    ``enumerate(max_n, max_edges, max_mult)``.
    """

    kind: str
    params: tuple = ()

    def label(self) -> str:
        return self.kind + ("_" + "_".join(str(p) for p in self.params) if self.params else "")


def parse_family(text: str) -> FamilySpec:
    """Parse ``kind`` or ``kind:p1,p2,...``, e.g. ``multicycle:5,3``."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    params = []
    for tok in filter(None, (p.strip() for p in rest.split(","))):
        params.append(float(tok) if any(ch in tok for ch in ".eE") else int(tok))
    spec = FamilySpec(kind, tuple(params))
    _check(spec)
    return spec


_ARITY = {
    "shannon": (1, 1),
    "multicycle": (2, 2),
    "petersen": (0, 0),
    "petersen-mult": (1, 1),
    "petersen-outer": (1, 1),
    "random": (4, 5),
    "enumerate": (3, 3),
}


def _check(spec: FamilySpec) -> None:
    if spec.kind not in _ARITY:
        raise ValueError(f"unknown family {spec.kind!r}; expected one of {sorted(_ARITY)}")
    lo, hi = _ARITY[spec.kind]
    if not lo <= len(spec.params) <= hi:
        raise ValueError(f"{spec.kind} takes {lo}..{hi} parameters, got {len(spec.params)}")
    p = spec.params
    if spec.kind in ("shannon", "petersen-mult", "petersen-outer") and p[0] < 1:
        raise ValueError("multiplicity must be positive")
    if spec.kind == "multicycle" and (p[0] < 3 or p[1] < 1):
        raise ValueError("multicycle needs n >= 3 and k >= 1")
    if spec.kind == "random":
        n, mult, prob = p[0], p[1], p[2]
        if n < 1 or mult < 1 or not 0 <= prob <= 1:
            raise ValueError("random needs n >= 1, max_mult >= 1, 0 <= edge_prob <= 1")
    if spec.kind == "enumerate":
        if any(x < 0 for x in p) or p[2] < 1:
            raise ValueError("enumerate bounds must be nonnegative, max_mult >= 1")
        if p[0] > 7:
            raise ValueError("enumerate supports at most 7 vertices")


def shannon_triangle(k: int) -> Multigraph:
    return Multigraph.from_edge_list([(0, 1, k), (1, 2, k), (0, 2, k)])


def multicycle(n: int, k: int) -> Multigraph:
    return Multigraph.from_edge_list(sorted((min(i, (i + 1) % n), max(i, (i + 1) % n), k) for i in range(n)))


def petersen(outer: int = 1, spokes: int = 1, inner: int = 1) -> Multigraph:
    pairs = [(a, b, outer) for a, b in _PETERSEN_OUTER]
    pairs += [(a, b, spokes) for a, b in _PETERSEN_SPOKES]
    pairs += [(a, b, inner) for a, b in _PETERSEN_INNER]
    return Multigraph.from_edge_list(sorted((min(a, b), max(a, b), m) for a, b, m in pairs))


def random_multigraph(n: int, max_mult: int, edge_prob: float, rng: np.random.Generator) -> Multigraph:
    pairs = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < edge_prob:
            pairs.append((u, v, int(rng.integers(1, max_mult + 1))))
    return Multigraph.from_edge_list(pairs, vertex_count=n)


def _bounded_vectors(slots: int, max_mult: int, max_sum: int) -> np.ndarray:
    vecs = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for _ in range(slots):
        parts, new_sums = [], []
        for m in range(max_mult + 1):
            ok = sums + m <= max_sum
            parts.append(np.hstack([vecs[ok], np.full((ok.sum(), 1), m, dtype=np.int64)]))
            new_sums.append(sums[ok] + m)
        vecs = np.vstack(parts)
        sums = np.concatenate(new_sums)
    return vecs


def enumerate_classes(max_n: int, max_edges: int, max_mult: int) -> Iterator[Multigraph]:
    """One multigraph per isomorphism class on ``max_n`` vertices.

    Isolated vertices are allowed, so smaller graphs appear padded.  Classes
    come out in increasing order of their least pair-vector code.
    """
    if max_n < 2:
        yield Multigraph(max_n)
        return
    pairs = list(itertools.combinations(range(max_n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    vecs = _bounded_vectors(len(pairs), max_mult, max_edges)
    weights = (max_mult + 1) ** np.arange(len(pairs) - 1, -1, -1, dtype=np.int64)
    best = None
    for perm in itertools.permutations(range(max_n)):
        moved = [index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs]
        code = vecs[:, moved] @ weights
        best = code if best is None else np.minimum(best, code)
    for code in np.unique(best):
        mat = np.zeros((max_n, max_n), dtype=np.int64)
        rem = int(code)
        for i in range(len(pairs) - 1, -1, -1):
            rem, digit = divmod(rem, max_mult + 1)
            a, b = pairs[i]
            mat[a, b] = mat[b, a] = digit
        yield Multigraph.from_matrix(mat)


def generate(spec: FamilySpec) -> Iterator[Multigraph]:
    _check(spec)
    p = spec.params
    if spec.kind == "shannon":
        yield shannon_triangle(p[0])
    elif spec.kind == "multicycle":
        yield multicycle(p[0], p[1])
    elif spec.kind == "petersen":
        yield petersen()
    elif spec.kind == "petersen-mult":
        yield petersen(p[0], p[0], p[0])
    elif spec.kind == "petersen-outer":
        yield petersen(outer=p[0])
    elif spec.kind == "random":
        n, mult, prob, seed = int(p[0]), int(p[1]), float(p[2]), int(p[3])
        count = int(p[4]) if len(p) > 4 else 1
        rng = np.random.default_rng(seed)
        for _ in range(count):
            yield random_multigraph(n, mult, prob, rng)
    else:
        yield from enumerate_classes(*(int(x) for x in p))
