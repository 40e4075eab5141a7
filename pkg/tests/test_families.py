from __future__ import annotations

import random

import pytest

from qorder.canon import canonical_certificate, is_isomorphic
from qorder.errors import ParameterError
from qorder.families import FamilySpec, build, family_graph, identify, parse_spec, specs_of_size
from qorder.graph import Graph, girth, is_connected


def spec(text: str) -> FamilySpec:
    return parse_spec(text)


def test_g0_12_4():
    lg = build(spec("G0(m=12,g=4)"))
    G = lg.graph
    assert G.m == 12 and girth(G) == 4 and G.max_degree == 10
    assert G.degrees[lg.labels["0"]] == 10


def test_gi_12_4_2():
    lg = build(spec("Gi(m=12,g=4,i=2)"))
    G, lab = lg.graph, lg.labels
    assert G.max_degree == 9
    assert G.has_edge(lab["2"], lab["w"])
    assert G.degrees[lab["w"]] == 1
    assert sum(1 for v in G.neighbors(lab["0"]) if G.degrees[v] == 1) == 7


def test_b2_9():
    lg = build(spec("B2(m=9)"))
    G, lab = lg.graph, lg.labels
    assert G.degrees[lab["0"]] == 7
    assert G.has_edge(lab["w1"], lab["w2"]) and G.has_edge(lab["1"], lab["2"])
    assert girth(G) == 3


def test_t4_9():
    lg = build(spec("T4(m=9)"))
    G, lab = lg.graph, lg.labels
    assert G.degrees[lab["center"]] == 7
    assert G.has_edge(lab["u9"], lab["u10"])
    mid = [v for v in G.neighbors(lab["u9"]) if v != lab["u10"]][0]
    assert G.has_edge(lab["center"], mid)
    assert girth(G) is None


def test_text_form_roundtrip():
    s = FamilySpec.of("Gi", m=12, g=4, i=2)
    assert str(s) == "Gi(m=12,g=4,i=2)"
    assert parse_spec(str(s)) == s
    assert parse_spec("Gi(12,4,2)") == s


@pytest.mark.parametrize(
    "text",
    ["Gi(m=12,g=4,i=3)", "Gi(m=4,g=4,i=1)", "Gv(m=5,g=4)", "G0(m=3,g=4)", "B1(m=4)", "B2(m=5)",
     "T3(m=4)", "Spider3(n=6)", "H0(n=5)", "Cycle(g=2)", "Nope(m=3)", "Gi(m=12,g=4)"],
)
def test_out_of_range(text):
    with pytest.raises(ParameterError):
        build(parse_spec(text))


MAX_DEGREE = {
    "G0": lambda p: p["m"] - p["g"] + 2,
    "Gi": lambda p: p["m"] - p["g"] + 1,
    "Gv": lambda p: p["m"] - p["g"] + 1,
    "B1": lambda p: p["m"] - 2,
    "B2": lambda p: p["m"] - 2,
    "T1": lambda p: p["m"] - 1,
    "T2": lambda p: p["m"] - 2,
    "T3": lambda p: p["m"] - 2,
    "T4": lambda p: p["m"] - 2,
    "Star": lambda p: p["m"],
}


def test_sizes_girths_degrees():
    for m in range(6, 16):
        for s in specs_of_size(m):
            G = build(s).graph
            p = dict(s.params)
            assert G.m == s.size == m
            assert is_connected(G)
            if s.kind in ("G0", "Gi", "Gv"):
                assert girth(G) == p["g"]
            elif s.kind in ("B1", "B2"):
                assert girth(G) == 3
            elif s.kind in ("T1", "T2", "T3", "T4", "Spider3", "Star"):
                assert girth(G) is None
            if s.kind in MAX_DEGREE and m >= 7 and not _degenerate(s):
                assert G.max_degree == MAX_DEGREE[s.kind](p), s


def test_spider_and_h0():
    for n in range(7, 16):
        S = family_graph(f"Spider3(n={n})")
        assert (S.n, S.m, S.max_degree) == (n, n - 1, n - 4)
    for n in range(6, 16):
        H = family_graph(f"H0(n={n})")
        assert (H.n, H.m, girth(H)) == (n, n, 4)


def test_identify_examples():
    star = Graph(10, [(0, k) for k in range(1, 10)])
    assert identify(star) == spec("Star(m=9)")
    G = family_graph("Gv(m=12,g=4)")
    perm = list(range(G.n))
    random.Random(5).shuffle(perm)
    assert identify(G.relabel(perm)) == spec("Gv(m=12,g=4)")
    c7 = Graph(7, [(i, (i + 1) % 7) for i in range(7)])
    assert identify(c7) == spec("Cycle(g=7)")
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert identify(k4) is None


def _degenerate(s: FamilySpec) -> bool:
    p = dict(s.params)
    if s.kind in ("G0", "Gi") and p["m"] <= p["g"] + 1:
        return True
    return s.kind == "H0" or (s.kind == "T2" and p["m"] == 4)


def test_identify_roundtrip():
    for m in range(3, 14):
        for s in specs_of_size(m):
            got = identify(build(s).graph)
            assert is_isomorphic(build(got).graph, build(s).graph)
            if not _degenerate(s):
                assert got == s


def test_known_aliases():
    assert is_isomorphic(family_graph("G0(m=7,g=7)"), family_graph("Cycle(g=7)"))
    assert is_isomorphic(family_graph("Gi(m=8,g=7,i=2)"), family_graph("CyclePlus(g=7)"))
    assert is_isomorphic(family_graph("T2(m=4)"), family_graph("T1(m=4)"))
    for n in range(6, 14):
        assert is_isomorphic(family_graph(f"H0(n={n})"), family_graph(f"Gv(m={n},g=4)"))


def test_family_certificates_distinct():
    for m in range(9, 14):
        certs = [canonical_certificate(build(s).graph) for s in specs_of_size(m) if not _degenerate(s)]
        assert len(certs) == len(set(certs))


def test_t3_switch_gives_g04():
    for m in range(5, 16):
        lg = build(spec(f"T3(m={m})"))
        lab = lg.labels
        H = lg.graph.with_edges(add=[(lab["u5"], lab["u7"])], remove=[(lab["u5"], lab["u6"])])
        keep = [v for v in range(H.n) if v != lab["u6"]]
        assert is_isomorphic(H.induced(keep), family_graph(f"G0(m={m},g=4)"))
