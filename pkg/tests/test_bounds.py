from __future__ import annotations

import math
from fractions import Fraction

import pytest

from qorder.bounds import (
    degree_bound_lower,
    degree_bound_upper,
    entry_bound,
    feng_bound,
    gi_bracket,
    gi_grid,
    is_regular,
    is_semiregular_bipartite,
    run_sweep,
    sweep_entry,
    sweep_feng,
    sweep_gi_bracket,
    sweep_x0,
    x0_lower_bound,
)
from qorder.errors import ParameterError
from qorder.exactpoly import named_poly
from qorder.families import build, family_graph, parse_spec
from qorder.graph import Graph
from qorder.spectral import q_index


def test_entry_bound_examples():
    assert entry_bound(4, 2) == pytest.approx(math.sqrt(1 / 3), abs=1e-15)
    assert entry_bound(3, 3) == 1.0
    with pytest.raises(ParameterError):
        entry_bound(3, 0)


def test_feng_examples():
    c6 = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert feng_bound(c6) == 4
    assert abs(q_index(c6).q - 4) <= 1e-10
    star = Graph(6, [(0, k) for k in range(1, 6)])
    assert feng_bound(star) == 6
    assert abs(q_index(star).q - 6) <= 1e-10
    assert is_regular(c6) and is_semiregular_bipartite(star)
    assert not is_semiregular_bipartite(family_graph("B2(m=9)"))


def test_feng_for_gi():
    for m, g in [(12, 4), (15, 5), (20, 7)]:
        for i in range(1, g // 2 + 1):
            G = build(parse_spec(f"Gi(m={m},g={g},i={i})")).graph
            # for i = 1 the degree-3 vertex 1 sits next to vertex 0
            extra = 3 if i == 1 else 2
            assert feng_bound(G) == pytest.approx(m - g + 2 + extra / (m - g + 1), abs=1e-12)


def test_feng_needs_connected():
    with pytest.raises(ParameterError):
        feng_bound(Graph(4, [(0, 1), (2, 3)]))


def test_degree_bounds():
    assert degree_bound_upper(12, 8) == 10
    with pytest.raises(ParameterError):
        degree_bound_upper(12, 7)
    with pytest.raises(ParameterError):
        degree_bound_upper(4, 4)
    for m in range(4, 14):
        assert degree_bound_lower(m - 1, m) == m
        assert q_index(family_graph(f"T1(m={m})")).q > m + 1e-9
    with pytest.raises(ParameterError):
        degree_bound_lower(12, 12)


def test_gi_bracket_examples():
    lo, hi = gi_bracket(12, 4)
    assert lo == 10 and hi == pytest.approx(10 + 2 / 9)
    q = q_index(family_graph("Gi(m=12,g=4,i=1)")).q
    assert 10 < q < 10.2223
    with pytest.raises(ParameterError):
        gi_bracket(6, 4)


def test_gi_bracket_grid():
    grid = [(m, g, i) for g in (4, 5, 6) for m in range(g + 3, g + 13) for i in range(1, g // 2 + 1)]
    rep = sweep_gi_bracket(grid)
    # the bracket holds everywhere; only the Feng-equality check fails, at i = 1
    assert rep.min_slack > 0
    assert {(v.bound_name, v.inputs["i"]) for v in rep.violations} == {("gi-feng", 1)}


def test_x0_bound_example():
    lg = build(parse_spec("Gi(m=12,g=4,i=1)"))
    pp = q_index(lg.graph)
    b = x0_lower_bound(12, 4, pp.q)
    assert b.bound_value > 0.5
    assert b.h_positive
    assert pp.entry(lg.labels["0"]) ** 2 > b.bound_value


def test_h1_positive_at_9_5():
    assert named_poly("h1").eval_at(Fraction(19, 2), 0) > 0


def test_x0_degenerate_q():
    with pytest.raises(ParameterError):
        x0_lower_bound(12, 4, 9.0)


def test_x0_sweep_small():
    rep = sweep_x0([(m, 4, i) for m in (12, 13) for i in (1, 2)])
    assert rep.passed


def test_gi_grid_shape():
    grid = gi_grid(range(4, 5), span=14)
    assert grid[0] == (11, 4, 1) and grid[-1] == (18, 4, 2)


def test_sweeps_small():
    assert sweep_entry(6).passed
    rep = sweep_feng(6)
    assert rep.passed and rep.checked == 1 + 1 + 3 + 5 + 12 + 30


def test_run_sweep_unknown():
    with pytest.raises(ParameterError):
        run_sweep("nope")


def test_report_json():
    rep = run_sweep("entry", max_m=3)
    js = rep.to_json()
    assert js["sweep"] == "entry" and js["pass"] and js["checked"] > 0
