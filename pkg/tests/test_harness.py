import itertools
import json
import math

import numpy as np
import pytest

from tihany_kit.chromatic import chromatic_index
from tihany_kit.harness import batch as batch_mod
from tihany_kit.harness.batch import batch_verify, graph_key_hex
from tihany_kit.harness.cli import main
from tihany_kit.harness.families import (
    FamilySpec,
    enumerate_classes,
    generate,
    multicycle,
    parse_family,
    shannon_triangle,
)
from tihany_kit.harness.io import EdgeListError, parse_edge_list, same_multigraph, serialize, write_edge_list
from tihany_kit.multigraph import Multigraph

from .conftest import random_graphs


# families


def test_family_examples():
    g = shannon_triangle(2)
    assert chromatic_index(g) == 6 == g.stats().omega_prime
    g = multicycle(5, 2)
    assert chromatic_index(g) == 5 > g.stats().omega_prime == 4
    assert next(generate(parse_family("petersen"))).edge_count == 15
    assert next(generate(parse_family("petersen-outer:3"))).edge_count == 25


@pytest.mark.parametrize("text", ["nope", "multicycle:2,1", "shannon:0", "random:3,2", "enumerate:8,3,2", "random:3,2,1.5,0"])
def test_parse_family_rejects(text):
    with pytest.raises(ValueError):
        parse_family(text)


def test_parse_family_label():
    spec = parse_family("multicycle:5,3")
    assert spec == FamilySpec("multicycle", (5, 3)) and spec.label() == "multicycle_5_3"


def _burnside_count(n, max_edges, max_mult):
    slots = list(itertools.combinations(range(n), 2))
    vectors = [v for v in itertools.product(range(max_mult + 1), repeat=len(slots)) if sum(v) <= max_edges]
    total = 0
    perms = list(itertools.permutations(range(n)))
    for p in perms:
        image = [slots.index(tuple(sorted((p[a], p[b])))) for a, b in slots]
        total += sum(1 for v in vectors if all(v[image[i]] == v[i] for i in range(len(slots))))
    assert total % len(perms) == 0
    return total // len(perms)


@pytest.mark.parametrize("bounds", [(3, 4, 2), (4, 4, 2), (4, 5, 3)])
def test_enumerate_counts_match_burnside(bounds):
    got = list(enumerate_classes(*bounds))
    assert len(got) == _burnside_count(*bounds)
    keys = [g.canonical_key() for g in got]
    assert len(set(keys)) == len(keys)
    n, m, k = bounds
    assert all(g.vertex_count == n and g.edge_count <= m and g.max_multiplicity() <= k for g in got)


def test_enumerate_small_family():
    got = list(generate(parse_family("enumerate:3,4,2")))
    assert len(got) == _burnside_count(3, 4, 2)


def test_random_is_reproducible():
    a = [serialize(g) for g in generate(parse_family("random:6,3,0.5,42,30"))]
    b = [serialize(g) for g in generate(parse_family("random:6,3,0.5,42,30"))]
    c = [serialize(g) for g in generate(parse_family("random:6,3,0.5,43,30"))]
    assert a == b and a != c and len(a) == 30


# edge-list I/O


def test_parse_examples():
    g = parse_edge_list("0 1 2\n")
    assert g.multiplicity(0, 1) == 2 and g.edge_count == 2
    g = parse_edge_list("# comment\nn 4\n\n0 1 1\n")
    assert g.vertex_count == 4


@pytest.mark.parametrize(
    "text,line",
    [("0 0 1", 1), ("0 1 1\n1 2 0", 2), ("0 1", 1), ("n 2\n0 2 1", 2), ("0 1 1\n1 0 1", 2), ("0 1 x", 1), ("0 1 1\nn 3", 2)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(EdgeListError) as err:
        parse_edge_list(text)
    assert err.value.lineno == line and f"line {line}" in str(err.value)


def test_roundtrip_random():
    for g in random_graphs(1000, seed=99, n_range=(1, 9), max_mult=4):
        assert same_multigraph(parse_edge_list(serialize(g)), g)
        assert parse_edge_list(serialize(g)).structurally_equal(g)


# batch


def _family():
    return [multicycle(5, 2), shannon_triangle(2), multicycle(5, 3), multicycle(7, 2)]


def _records(path):
    out = set()
    for line in path.read_text().splitlines():
        rec = json.loads(line)
        rec.pop("ms")
        out.add(json.dumps(rec, sort_keys=True))
    return out


def test_batch_empty(tmp_path):
    summary = batch_verify([], [0], tmp_path / "r.jsonl")
    assert summary.graphs_seen == 0 and (tmp_path / "r.jsonl").read_text() == ""


def test_batch_filters_hypothesis(tmp_path):
    out = tmp_path / "r.jsonl"
    summary = batch_verify(_family(), [0, 1], out)
    assert summary.graphs_seen == 4 and summary.hypothesis_holds == 3
    recs = [json.loads(x) for x in out.read_text().splitlines()]
    assert {r["outcome"] for r in recs} == {"witness"}
    assert summary.witnesses == len(recs) and summary.counterexample_candidates == 0
    keys = {r["graph_key"] for r in recs}
    assert graph_key_hex(shannon_triangle(2)) not in keys
    assert {(r["s"], r["t"], r["ell"]) for r in recs if r["graph_key"] == graph_key_hex(multicycle(5, 3))} == {
        (2, 7, 0), (3, 6, 0), (4, 5, 0), (4, 5, 1)}


def test_batch_resume_matches_uninterrupted(tmp_path, monkeypatch):
    full = tmp_path / "full.jsonl"
    batch_verify(_family(), [0, 1], full)

    part = tmp_path / "part.jsonl"
    real = batch_mod._run_graph
    calls = {"n": 0}

    def flaky(args):
        calls["n"] += 1
        if calls["n"] == 3:
            raise KeyboardInterrupt
        return real(args)

    monkeypatch.setattr(batch_mod, "_run_graph", flaky)
    with pytest.raises(KeyboardInterrupt):
        batch_verify(_family(), [0, 1], part)
    monkeypatch.setattr(batch_mod, "_run_graph", real)
    # a torn write from the interrupted graph must not survive the resume
    with part.open("a") as fh:
        fh.write(json.dumps({"graph_key": graph_key_hex(multicycle(5, 3)), "ms": 0}) + "\n")
    done_before = json.loads((tmp_path / "part.jsonl.ckpt").read_text())
    assert len(done_before) == 2
    summary = batch_verify(_family(), [0, 1], part, resume=True)
    assert summary.skipped_resumed == 2
    assert _records(part) == _records(full)


def test_batch_workers_match_serial(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    batch_verify(_family(), [0], a, workers=1)
    batch_verify(_family(), [0], b, workers=2)
    assert _records(a) == _records(b)


# CLI


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in {
        "c5x2": multicycle(5, 2),
        "c5x3": multicycle(5, 3),
        "triangle": shannon_triangle(1),
        "k4": Multigraph.from_edge_list([(a, b, 1) for a, b in itertools.combinations(range(4), 2)]),
        "c5x2m": multicycle(5, 2).remove_edges([0, 6]),
    }.items():
        p = tmp_path / f"{name}.el"
        write_edge_list(g, p)
        paths[name] = str(p)
    bad = tmp_path / "bad.el"
    bad.write_text("0 1 1\n2 2 1\n")
    paths["bad"] = str(bad)
    return paths


def test_cli_chi_and_omega(files, capsys):
    assert main(["chi-index", files["triangle"]]) == 0
    assert capsys.readouterr().out.strip() == "3"
    assert main(["omega-prime", files["c5x2"]]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_cli_verify(files, capsys):
    assert main(["verify", files["c5x2"], "--ell", "0"]) == 0
    out = capsys.readouterr().out
    assert "(s,t)=(2,4)" in out and "(s,t)=(3,3)" in out and out.count("witness") == 2
    assert main(["verify", files["c5x3"], "--ell", "1", "--s", "4", "--t", "5", "--json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["outcome"] == "witness" and rec["s"] == 4


def test_cli_verify_hypothesis_notice(files, capsys):
    assert main(["verify", files["k4"], "--ell", "0"]) == 0
    assert "hypothesis not met" in capsys.readouterr().out


def test_cli_usage_errors(files, capsys):
    assert main(["chi-index", files["bad"]]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["chi-index", "/nonexistent.el"]) == 1
    assert main(["verify", files["c5x2"], "--ell", "0", "--s", "2"]) == 1
    assert main(["verify", files["c5x2"], "--ell", "0", "--s", "1", "--t", "5"]) == 1
    assert main(["bogus"]) == 1
    assert main(["extend", files["c5x2"], "--s", "3", "--t", "3", "--ell", "0", "--strategy", "zigzag"]) == 1
    assert main(["gen", "--family", "nope", "--out", "x"]) == 1


def test_cli_budget_exit(files):
    assert main(["--node-limit", "1", "verify", files["c5x3"], "--ell", "0"]) in (0, 3)
    assert main(["--node-limit", "1", "chi-index", files["c5x3"]]) in (0, 3)


def test_cli_extend(files, capsys):
    assert main(["extend", files["c5x2m"], "--s", "3", "--t", "3", "--ell", "0", "--strategy", "half-fill,spread"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "extended" and doc["trace"][0]["step"] == "pivot"
    assert main(["extend", files["c5x2"], "--s", "3", "--t", "3", "--ell", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == "failed"


def test_cli_gen_and_probe(files, tmp_path, capsys):
    out = tmp_path / "gen"
    assert main(["gen", "--family", "multicycle:5,2", "--out", str(out)]) == 0
    made = sorted(out.glob("*.el"))
    assert len(made) == 1 and same_multigraph(parse_edge_list(made[0].read_text()), multicycle(5, 2))
    capsys.readouterr()
    assert main(["probe-f", files["c5x2"], "--ell", "0"]) == 0
    assert int(capsys.readouterr().out) <= 2


def test_cli_batch(tmp_path, capsys):
    out = tmp_path / "b.jsonl"
    assert main(["batch", "--family", "multicycle:5,3", "--ell", "0", "1", "--out", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["witnesses"] == 4 and summary["counterexample_candidates"] == 0
    assert main(["batch", "--family", "multicycle:5,3", "--ell", "0", "1", "--out", str(out), "--resume"]) == 0
    assert json.loads(capsys.readouterr().out)["skipped_resumed"] == 1
    assert len(out.read_text().splitlines()) == 4


def test_cli_help(capsys):
    assert main(["--help"]) == 0
    assert "chi-index" in capsys.readouterr().out
