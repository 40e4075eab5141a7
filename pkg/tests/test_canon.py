from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorder.canon import canonical_certificate, canonical_graph, canonical_labeling, is_isomorphic
from qorder.errors import ParameterError
from qorder.graph import Graph, make_graph
from oracles import brute_canonical, graphs, to_nx


def test_p4_relabelled():
    a = make_graph(4, [(0, 1), (1, 2), (2, 3)])
    b = make_graph(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_certificate(a) == canonical_certificate(b)


def test_k3_vs_p3():
    k3 = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    p3 = make_graph(3, [(0, 1), (1, 2)])
    assert canonical_certificate(k3) != canonical_certificate(p3)


def test_three_edge_graphs_distinct():
    gs = [
        make_graph(3, [(0, 1), (1, 2), (0, 2)]),
        make_graph(4, [(0, 1), (1, 2), (2, 3)]),
        make_graph(4, [(0, 1), (0, 2), (0, 3)]),
    ]
    assert len({canonical_certificate(G) for G in gs}) == 3


def test_order_limit():
    with pytest.raises(ParameterError):
        canonical_certificate(Graph(17, [(i, i + 1) for i in range(16)]))


def test_labeling_is_permutation():
    G = make_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)])
    order = canonical_labeling(G)
    assert sorted(order) == list(range(6))
    assert nx.is_isomorphic(to_nx(canonical_graph(G)), to_nx(G))


def test_agrees_with_brute_force_on_all_small_graphs():
    """All graphs on 5 vertices plus random ones on 6 and 7: certificate
    equality coincides with equality of the all-permutations minimum."""
    samples = []
    pairs5 = list(itertools.combinations(range(5), 2))
    for mask in range(1 << len(pairs5)):
        samples.append(Graph(5, [p for k, p in enumerate(pairs5) if mask >> k & 1]))
    rng = random.Random(3)
    for n in (6, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for _ in range(150):
            samples.append(Graph(n, [p for p in pairs if rng.random() < 0.4]))
    by_cert: dict[bytes, set] = {}
    by_brute: dict[tuple, set] = {}
    for k, G in enumerate(samples):
        by_cert.setdefault(canonical_certificate(G), set()).add(k)
        by_brute.setdefault(brute_canonical(G), set()).add(k)
    assert sorted(map(sorted, by_cert.values())) == sorted(map(sorted, by_brute.values()))
    # 34 isomorphism classes of graphs on 5 vertices
    assert len({canonical_certificate(G) for G in samples[: 1 << 10]}) == 34


def test_hard_regular_graphs():
    """Vertex-transitive and strongly regular inputs stress the search."""
    pet = nx.petersen_graph()
    G = Graph(10, pet.edges)
    rng = random.Random(1)
    for _ in range(5):
        perm = list(range(10))
        rng.shuffle(perm)
        assert canonical_certificate(G.relabel(perm)) == canonical_certificate(G)
    # Petersen versus the 5-prism: both cubic on 10 vertices with 15 edges
    prism = Graph(10, nx.circular_ladder_graph(5).edges)
    assert not is_isomorphic(G, prism)
    shrik = nx.Graph()
    # Shrikhande versus the 4x4 rook graph: same parameters srg(16,6,2,2)
    for a in range(16):
        i, j = divmod(a, 4)
        for di, dj in ((0, 1), (1, 0), (1, 1)):
            shrik.add_edge(a, ((i + di) % 4) * 4 + (j + dj) % 4)
    rook = nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4))
    rook = nx.convert_node_labels_to_integers(rook)
    assert not is_isomorphic(Graph(16, shrik.edges), Graph(16, rook.edges))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_relabel_invariance(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert canonical_certificate(G.relabel(perm)) == canonical_certificate(G)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8), graphs(max_n=8))
def test_certificate_matches_vf2(G, H):
    same = canonical_certificate(G) == canonical_certificate(H)
    assert same == nx.is_isomorphic(to_nx(G), to_nx(H))
