import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from oracles import odd_walk_bfs, to_nx
from hboot.constructions import cycle, path, path_triangle
from hboot.graph import (
    Graph,
    GraphError,
    all_distances,
    bipartition,
    components,
    disjoint_union,
    distance,
    from_edges,
    graph6_decode,
    graph6_encode,
    graph_code,
    graph_from_code,
    is_connected,
    odd_distance,
)


def test_bitset_basics():
    g = from_edges(70, [(0, 69), (3, 64), (3, 4)])
    assert g.has_edge(69, 0) and g.has_edge(64, 3)
    assert g.neighbors(3) == [4, 64]
    assert g.edge_count == 3
    assert g.edges() == [(0, 69), (3, 4), (3, 64)]
    assert g.degree(3) == 2
    h = g.without_edges([(3, 4)])
    assert not h.has_edge(3, 4) and g.has_edge(3, 4)


def test_rejects_loops_and_bad_vertices():
    with pytest.raises(GraphError):
        from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        path(3).graph.has_edge(0, 7)


def test_dense_with_edges_matches_sparse():
    rng = np.random.default_rng(0)
    pairs = [p for p in itertools.combinations(range(40), 2) if rng.random() < 0.5]
    a = Graph.empty(40).with_edges(pairs)
    b = Graph.empty(40)
    for p in pairs:
        b = b.with_edges([p])
    assert a == b


def test_distance_examples():
    assert distance(path(5).graph, 0, 4) == 4
    assert distance(cycle(6).graph, 0, 3) == 3
    assert distance(disjoint_union(path(2).graph, path(2).graph), 0, 2) is None


def test_odd_distance_examples():
    assert odd_distance(cycle(5).graph, 0, 0) == 5
    assert odd_distance(path(4).graph, 0, 2) is None
    t = path_triangle(3)
    assert odd_distance(t.graph, t["v_ell"], t["w_ell"]) == 7


def test_bipartition_examples():
    assert bipartition(path(6).graph) == [0, 1, 0, 1, 0, 1]
    assert bipartition(cycle(5).graph) is None
    assert bipartition(path_triangle(5).graph) is None


def test_components_examples():
    assert components(path(5).graph) == [[0, 1, 2, 3, 4]]
    assert [len(c) for c in components(disjoint_union(cycle(3).graph, path(2).graph))] == [3, 2]
    assert components(Graph.empty(3)) == [[0], [1], [2]]


def test_graph6_reference_values():
    assert graph6_encode(from_edges(3, [(0, 1), (0, 2), (1, 2)])) == "Bw"
    assert graph6_encode(Graph.empty(1)) == "@"
    p7 = path(7).graph
    assert graph6_decode(graph6_encode(p7)) == p7


@pytest.mark.parametrize("n", [0, 1, 2, 5, 30, 62, 63, 64, 200])
def test_graph6_matches_networkx(n):
    g = nx.gnp_random_graph(n, 0.3, seed=n)
    ours = from_edges(n, g.edges())
    ref = nx.to_graph6_bytes(g, header=False).decode().strip()
    assert graph6_encode(ours) == ref
    assert graph6_decode(ref) == ours


def test_graph6_round_trip_exhaustive_small():
    for n in range(6):
        for code in range(1 << (n * (n - 1) // 2)):
            g = graph_from_code(n, code)
            assert graph6_decode(graph6_encode(g)) == g
            assert graph_code(g) == code


def test_graph6_header_and_errors():
    g = cycle(4).graph
    assert graph6_decode(graph6_encode(g, header=True)) == g
    for bad in ["", "C", "C~~~", "B\x7f"]:
        with pytest.raises(GraphError):
            graph6_decode(bad)


@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    assert graph6_decode(graph6_encode(g)) == g


@given(graphs(max_n=9))
def test_distance_matches_networkx(g):
    D = all_distances(g)
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for x in range(g.n):
        for y in range(g.n):
            assert D[x, y] == ref[x].get(y, -1)
            if x != y:
                assert (D[x, y] == 1) == g.has_edge(x, y)


@given(graphs(max_n=9))
def test_triangle_inequality(g):
    D = all_distances(g).astype(float)
    D[D < 0] = np.inf
    for x, y, z in itertools.product(range(g.n), repeat=3):
        assert D[x, z] <= D[x, y] + D[y, z]


@given(graphs(max_n=9))
def test_odd_distance_properties(g):
    edges = g.edges()
    bip = bipartition(g)
    for x in range(g.n):
        assert (odd_distance(g, x, x) is None) or bip is None
        for y in range(g.n):
            od = odd_distance(g, x, y)
            assert od == odd_walk_bfs(edges, g.n, x, y)
            if od is not None:
                assert od % 2 == 1
                assert od >= distance(g, x, y)
    assert (bip is not None) == all(odd_distance(g, x, x) is None for x in range(g.n))


@given(graphs(max_n=9))
def test_bipartition_and_components_match_networkx(g):
    ng = to_nx(g)
    assert (bipartition(g) is not None) == nx.is_bipartite(ng)
    side = bipartition(g)
    if side is not None:
        assert all(side[u] != side[v] for u, v in g.edges())
    ref = sorted(sorted(c) for c in nx.connected_components(ng))
    assert components(g) == ref
    assert is_connected(g) == (g.n <= 1 or nx.is_connected(ng))


@given(graphs(max_n=9))
def test_relabel_preserves_structure(g):
    perm = list(reversed(range(g.n)))
    h = g.relabel(perm)
    assert h.edge_count == g.edge_count
    assert sorted(h.degrees()) == sorted(g.degrees())
