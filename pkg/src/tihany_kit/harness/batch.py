"""Batch verification with JSONL reports and canonical-key checkpoints."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from ..chromatic import DEFAULT_NODE_LIMIT, BudgetExceeded
from ..multigraph import Multigraph
from ..tihany import VerificationReport, Verifier, verify_all_st

log = logging.getLogger(__name__)

WORKERS_ENV = "TIHANY_KIT_WORKERS"


@dataclass
class BatchSummary:
    graphs_seen: int = 0
    hypothesis_holds: int = 0
    witnesses: int = 0
    counterexample_candidates: int = 0
    budget_exceeded: int = 0
    skipped_resumed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def graph_key_hex(g: Multigraph) -> str:
    return g.canonical_key().hex()


def report_record(key: str, report: VerificationReport) -> dict:
    inst = report.instance
    rec = {
        "graph_key": key,
        "vertex_count": inst.graph.vertex_count,
        "edge_list": [list(p) for p in inst.graph.edge_pairs()],
        "ell": inst.ell,
        "s": inst.s,
        "t": inst.t,
        "outcome": report.outcome,
        "cliques_tested": report.cliques_tested,
        "solver_nodes": report.solver_nodes,
        "ms": round(report.wall_time * 1000, 3),
    }
    if report.witness is not None:
        rec["witness_edges"] = list(report.witness)
        rec["chi_after"] = report.chi_prime_after
    if report.diagnostics is not None:
        rec["diagnostics"] = report.diagnostics
    return rec


def _run_graph(args) -> tuple[str, bool, list[dict], bool]:
    g, ell_values, node_limit = args
    key = graph_key_hex(g)
    verifier = Verifier(node_limit=node_limit)
    try:
        chi = verifier.chi(g)
    except BudgetExceeded:
        return key, False, [], True
    if chi <= g.stats().omega_prime:
        return key, False, [], False
    records = []
    for ell in ell_values:
        for report in verify_all_st(g, ell, verifier, chi=chi):
            records.append(report_record(key, report))
    return key, True, records, False


def load_checkpoint(path) -> set[str]:
    path = Path(path)
    if not path.exists():
        return set()
    return set(json.loads(path.read_text()))


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def batch_verify(
    source: Iterable[Multigraph],
    ell_values: Iterable[int],
    out_path,
    checkpoint_path=None,
    resume: bool = False,
    workers: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> BatchSummary:
    """Verify every graph of ``source`` with χ' > ω' for each ell.

    Records go to ``out_path`` (JSONL), the set of finished graph keys to
    ``checkpoint_path`` (default ``<out>.ckpt``).  With ``resume`` the run
    skips finished graphs and drops any records of unfinished ones first.
    """
    out_path = Path(out_path)
    ckpt_path = Path(checkpoint_path) if checkpoint_path else out_path.with_name(out_path.name + ".ckpt")
    ell_values = tuple(sorted(set(ell_values)))
    workers = workers or _default_workers()
    done: set[str] = set()
    if resume:
        done = load_checkpoint(ckpt_path)
        kept = []
        if out_path.exists():
            for line in out_path.read_text().splitlines():
                if line.strip() and json.loads(line)["graph_key"] in done:
                    kept.append(line)
        _write_atomic(out_path, "".join(k + "\n" for k in kept))
    else:
        out_path.write_text("")
        _write_atomic(ckpt_path, "[]")

    summary = BatchSummary()
    pending = []
    queued = set()
    for g in source:
        summary.graphs_seen += 1
        key = graph_key_hex(g)
        if key in done or key in queued:
            summary.skipped_resumed += key in done
            continue
        queued.add(key)
        pending.append((g, ell_values, node_limit))

    if workers > 1 and len(pending) > 1:
        with ProcessPoolExecutor(workers) as pool:
            _drain(pool.map(_run_graph, pending, chunksize=4), out_path, ckpt_path, done, summary)
    else:
        _drain(map(_run_graph, pending), out_path, ckpt_path, done, summary)
    return summary


def _drain(results, out_path: Path, ckpt_path: Path, done: set[str], summary: BatchSummary) -> None:
    with out_path.open("a") as sink:
        for key, holds, records, over_budget in results:
            summary.hypothesis_holds += holds
            summary.budget_exceeded += over_budget
            for rec in records:
                summary.witnesses += rec["outcome"] == "witness"
                summary.counterexample_candidates += rec["outcome"] == "counterexample_candidate"
                summary.budget_exceeded += rec["outcome"] == "budget_exceeded"
                sink.write(json.dumps(rec, sort_keys=True) + "\n")
            sink.flush()
            done.add(key)
            _write_atomic(ckpt_path, json.dumps(sorted(done)))
