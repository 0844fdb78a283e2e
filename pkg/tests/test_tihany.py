import math

import pytest

from tihany_kit.chromatic import chromatic_index
from tihany_kit.harness.families import multicycle, petersen, shannon_triangle
from tihany_kit.linegraph import cliques_of_size
from tihany_kit.tihany import (
    HypothesisError,
    VerificationInstance,
    Verifier,
    admissible_floor,
    admissible_pairs,
    probe_f,
    verify_all_st,
    verify_instance,
    witness_is_sound,
)


def _brute_has_witness(g, s, need):
    return any(chromatic_index(g.remove_edges(c.edge_ids)) >= need for c in cliques_of_size(g, s))


def test_admissible_floor():
    assert [admissible_floor(e) for e in range(4)] == [2, 4, 9, math.ceil(3.5 * 3 + 2)]
    with pytest.raises(ValueError):
        admissible_floor(-1)


def test_verify_c5x2(c5x2):
    # χ' = 5 > ω' = 4; a 2-clique leaving χ' >= 4 exists
    assert chromatic_index(c5x2) == 5 and c5x2.stats().omega_prime == 4
    assert _brute_has_witness(c5x2, 2, 4)
    r = verify_instance(VerificationInstance(c5x2, 2, 4, 0))
    assert r.outcome == "witness" and witness_is_sound(r)
    assert r.chi_prime_after >= 4


def test_verify_c5x3_ell1(c5x3):
    assert chromatic_index(c5x3) == 8 and c5x3.stats().omega_prime == 6
    r = verify_instance(VerificationInstance(c5x3, 4, 5, 1))
    assert r.outcome == "witness" and witness_is_sound(r)
    # a 4-star leaves 11 edges on five vertices: at least ceil(11/2) = 6 colours
    rest = c5x3.remove_edges(r.witness)
    assert rest.edge_count == 11 and r.chi_prime_after >= 6


def test_verify_petersen(pete):
    assert _brute_has_witness(pete, 2, 3)
    r = verify_instance(VerificationInstance(pete, 2, 3, 0))
    assert r.outcome == "witness" and witness_is_sound(r) and len(r.witness) == 2


def test_verify_instance_checks_hypotheses(c5x2, triangle):
    with pytest.raises(ValueError):
        verify_instance(VerificationInstance(c5x2, 2, 3, 0))
    with pytest.raises(HypothesisError):
        verify_instance(VerificationInstance(triangle, 2, 2, 0))
    with pytest.raises(ValueError):
        verify_instance(VerificationInstance(multicycle(5, 3), 3, 6, 1))


def test_verify_all_st_pairs(c5x2, c5x3):
    assert [(r.instance.s, r.instance.t) for r in verify_all_st(c5x2, 0)] == [(2, 4), (3, 3)]
    assert [(r.instance.s, r.instance.t) for r in verify_all_st(c5x3, 1)] == [(4, 5)]
    assert verify_all_st(c5x2, 1) == []
    assert admissible_pairs(5, 1) == []


def test_verify_all_st_reports_hypothesis_failure():
    with pytest.raises(HypothesisError):
        verify_all_st(shannon_triangle(2), 0)


def test_probe_examples(c5x2, c5x3):
    b = probe_f(c5x2, 0)
    assert b is not None and b <= 2
    b = probe_f(c5x3, 1)
    assert b is not None and b <= 4


@pytest.mark.parametrize("g,ell", [(multicycle(5, 2), 0), (multicycle(5, 3), 1), (petersen(), 0), (multicycle(7, 3), 0)])
def test_probe_minimality(g, ell):
    b = probe_f(g, ell)
    chi = chromatic_index(g)
    total = chi + 1
    for s in range(b, total // 2 + 1):
        assert _brute_has_witness(g, s, total - s + ell)
    if b > 1:
        assert not _brute_has_witness(g, b - 1, total - (b - 1) + ell)


def test_memo_reuses_isomorphic_residuals(c5x3):
    v = Verifier()
    # nothing removes enough: every 3-clique is tried, most residuals are isomorphic
    witness, tested = v.find_witness(c5x3, 3, 20)
    assert witness is None and tested == 5 * 20 - 5  # E(uv) triples sit in two stars
    assert len(v.memo) < tested
    calls = v.stats.calls
    v.find_witness(c5x3, 3, 20)
    assert v.stats.calls == calls


def test_counterexample_path_audits(monkeypatch, c5x2):
    # force every residual to look colourable; the audit must agree and dump diagnostics
    monkeypatch.setattr(Verifier, "colorable", lambda self, g, k: True)
    r = Verifier().verify(VerificationInstance(c5x2, 2, 4, 0))
    assert r.outcome == "counterexample_candidate"
    assert r.diagnostics["chi"] == 5 and r.diagnostics["residuals"]


def test_budget_outcome():
    g = petersen(3, 3, 3)
    r = Verifier(node_limit=1).verify(VerificationInstance(g, 5, 6, 1))
    assert r.outcome in {"witness", "budget_exceeded"}
