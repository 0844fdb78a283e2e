"""Plain-text edge lists: ``u v m`` per line, ``#`` comments, optional ``n <count>`` header."""

from __future__ import annotations

from pathlib import Path

from ..multigraph import GraphError, Multigraph


class EdgeListError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_edge_list(text: str) -> Multigraph:
    declared = None
    pairs: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise EdgeListError(lineno, f"malformed header {line!r}")
            if declared is not None or pairs:
                raise EdgeListError(lineno, "header must come first and only once")
            declared = int(parts[1])
            continue
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise EdgeListError(lineno, f"expected 'u v m' with nonnegative integers, got {line!r}")
        u, v, m = map(int, parts)
        if u == v:
            raise EdgeListError(lineno, f"loop at vertex {u}")
        if m < 1:
            raise EdgeListError(lineno, f"multiplicity {m} < 1")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListError(lineno, f"pair {key} listed twice")
        if declared is not None and max(u, v) >= declared:
            raise EdgeListError(lineno, f"vertex {max(u, v)} outside declared count {declared}")
        seen.add(key)
        pairs.append((u, v, m))
    try:
        return Multigraph.from_edge_list(pairs, vertex_count=declared)
    except GraphError as exc:  # pragma: no cover - guarded above
        raise EdgeListError(0, str(exc)) from exc


def serialize(g: Multigraph) -> str:
    lines = [f"n {g.vertex_count}"]
    lines += [f"{u} {v} {m}" for u, v, m in g.edge_pairs()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Multigraph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Multigraph, path) -> None:
    Path(path).write_text(serialize(g))


def same_multigraph(a: Multigraph, b: Multigraph) -> bool:
    """Equal vertex counts and multiplicities (edge ids ignored)."""
    return a.vertex_count == b.vertex_count and a.edge_pairs() == b.edge_pairs()
