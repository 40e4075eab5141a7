from __future__ import annotations

import networkx as nx
import pytest

from qorder.canon import canonical_certificate
from qorder.enumeration import (
    ClassFilter,
    clear_cache,
    count,
    enumerate_graphs,
    enumerate_with_certificates,
    rank_top_k,
    verify_theorem,
)
from qorder.errors import CapExceededError, HypothesisError, ParameterError
from qorder.graph import girth, is_connected
from oracles import IsoSet, naive_connected_count, seen_set_classes, to_nx


def test_m3_any():
    gs = list(enumerate_graphs(3))
    assert len(gs) == 3
    names = {"K3": nx.complete_graph(3), "P4": nx.path_graph(4), "K13": nx.star_graph(3)}
    for H in names.values():
        assert sum(nx.is_isomorphic(to_nx(G), H) for G in gs) == 1


def test_small_counts():
    assert [count(m) for m in range(1, 6)] == [1, 1, 3, 5, 12]
    assert count(4, ClassFilter.at_least(4)) == 1
    # diamond, bull, triangle with a pendant P3, triangle with two leaves at one vertex
    assert count(5, ClassFilter.equal(3)) == 4


def test_naive_oracle_counts():
    for m in range(1, 7):
        assert count(m) == naive_connected_count(m)


def test_seen_set_oracle_classes():
    """Same isomorphism classes as an independent networkx seen-set generator."""
    for m in range(1, 9):
        ours = IsoSet()
        for G in enumerate_graphs(m):
            assert ours.add(to_nx(G))
        theirs = seen_set_classes(m)
        assert len(theirs) == ours.size
        for H in theirs:
            assert not ours.add(H)


def test_stream_invariants():
    for m in range(1, 10):
        certs = []
        for c, G, gi in enumerate_with_certificates(m):
            assert G.m == m and is_connected(G)
            assert canonical_certificate(G) == c
            assert gi == girth(G)
            certs.append(c)
        assert certs == sorted(certs)
        assert len(set(certs)) == len(certs)


def test_filters():
    for G in enumerate_graphs(9, ClassFilter.equal(3)):
        assert girth(G) == 3
    for G in enumerate_graphs(9, ClassFilter.at_least(4)):
        assert girth(G) >= 4
    for G in enumerate_graphs(9, ClassFilter.any(max_degree=3)):
        assert G.max_degree <= 3
    total = count(8)
    trees = sum(1 for G in enumerate_graphs(8) if girth(G) is None)
    by_girth = sum(count(8, ClassFilter.equal(g)) for g in range(3, 9))
    assert total == trees + by_girth
    assert count(8, ClassFilter.at_least(5)) == sum(count(8, ClassFilter.equal(g)) for g in range(5, 9))


def test_filter_parse():
    assert ClassFilter.parse("any") == ClassFilter.any()
    assert ClassFilter.parse(">=4") == ClassFilter.at_least(4)
    assert ClassFilter.parse("=3") == ClassFilter.equal(3)
    assert ClassFilter.parse("5") == ClassFilter.equal(5)
    assert str(ClassFilter.at_least(4, 8)) == ">=4,maxdeg<=8"
    for bad in ("x", ">3x"):
        with pytest.raises(ParameterError):
            ClassFilter.parse(bad)
    with pytest.raises(ParameterError):
        ClassFilter.equal(2)


def test_cap():
    with pytest.raises(CapExceededError):
        enumerate_graphs(13)
    with pytest.raises(CapExceededError):
        enumerate_graphs(14, cap=14)


def test_parallel_matches_serial():
    serial = [c for c, _, _ in enumerate_with_certificates(9)]
    clear_cache()
    parallel = [c for c, _, _ in enumerate_with_certificates(9, jobs=2)]
    assert serial == parallel


def test_rank_theorem_1_3_m9():
    table = rank_top_k(9, ClassFilter.equal(3), 5)
    fams = [r.family for r in table.rows]
    assert fams == ["G0(m=9,g=3)", "B1(m=9)", "B2(m=9)", "Gi(m=9,g=3,i=1)", "Gv(m=9,g=3)"]
    assert all(r.gap > 1e-6 for r in table.rows)
    assert not table.has_ties


def test_rank_head_any():
    table = rank_top_k(9, ClassFilter.any(), 2)
    assert [r.family for r in table.rows] == ["Star(m=9)", "G0(m=9,g=3)"]
    assert table.rows[0].q == pytest.approx(10, abs=1e-10)


def test_rank_small_class_note():
    table = rank_top_k(4, ClassFilter.at_least(4), 3)
    assert len(table.rows) == 1 and table.notes
    with pytest.raises(ParameterError):
        rank_top_k(4, ClassFilter.at_least(6), 1)
    with pytest.raises(ParameterError):
        rank_top_k(4, None, 0)


def test_rank_reports_ties():
    # rows within the tie tolerance must be flagged and share a rank
    table = rank_top_k(6, ClassFilter.any(), 30)
    qs = [r.q for r in table.rows]
    assert qs == sorted(qs, reverse=True)
    for a, b in zip(table.rows, table.rows[1:]):
        if a.q - b.q <= 1e-9:
            assert a.tied and b.tied and a.rank == b.rank


def test_verify_theorem_1_3():
    rep = verify_theorem("thm-1.3", {"m": 9})
    assert rep.passed and rep.status == "pass"
    assert rep.min_gap > 1e-6
    assert rep.observed == rep.expected


def test_verify_theorem_1_4_m9():
    rep = verify_theorem("thm-1.4", {"m": 9})
    assert rep.passed and rep.min_gap > 1e-6
    assert rep.counts


def test_hypothesis_errors():
    with pytest.raises(HypothesisError):
        verify_theorem("thm-1.1", {"m": 9, "g": 3})
    with pytest.raises(HypothesisError):
        verify_theorem("thm-1.3", {"m": 8})
    with pytest.raises(ParameterError):
        verify_theorem("thm-9.9", {"m": 9})
    with pytest.raises(ParameterError):
        verify_theorem("thm-1.3", {})


def test_lemma_3_1_g5():
    for m in range(7, 11):
        assert verify_theorem("lem-3.1", {"m": m, "g": 5}).passed


def test_lemma_3_1_g4_counterexample():
    """At g = 4 the extremal-degree class also holds K_{2,3} with pendants."""
    rep = verify_theorem("lem-3.1", {"m": 9, "g": 4})
    assert not rep.passed
    delta = 9 - 4 + 1
    found = [G for G in enumerate_graphs(9, ClassFilter.equal(4)) if G.max_degree == delta]
    assert len(found) == 4
    assert any(
        nx.is_isomorphic(
            to_nx(G).subgraph([v for v in range(G.n) if G.degrees[v] > 1]), nx.complete_bipartite_graph(2, 3)
        )
        for G in found
    )


def test_family_only_verdicts():
    assert verify_theorem("lem-3.5", {"m": 18, "g": 10}).passed
    assert verify_theorem("lem-3.4", {"m": 12, "g": 4}).passed
    assert verify_theorem("lem-3.2", {"m": 14, "g": 6}).passed


def test_verdict_json():
    js = verify_theorem("lem-3.5", {"m": 11, "g": 4}).to_json()
    assert js["theorem"] == "lem-3.5" and js["status"] in ("pass", "pass-with-warning")
    assert js["expected"] == ["Gi(m=11,g=4,i=1)", "Gv(m=11,g=4)", "Gi(m=11,g=4,i=2)"]
