import numpy as np
import pytest

from schemecodes import graphs as G
from schemecodes import fixtures as FX


def cycle(n):
    return G.graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_parse_graph6_k3():
    g = G.parse_graph6("Bw")
    assert g.n == 3 and g.edge_count() == 3


def test_parse_graph6_single_vertex():
    g = G.parse_graph6("@")
    assert g.n == 1 and g.edge_count() == 0


def test_parse_graph6_header_and_roundtrip(rng):
    for n in (2, 5, 40, 80):
        a = np.triu((rng.random((n, n)) < 0.3).astype(np.uint8), 1)
        g = G.Graph(a | a.T)
        text = G.write_graph6(g)
        assert G.parse_graph6(">>graph6<<" + text).adjacency.tolist() == g.adjacency.tolist()


def test_parse_graph6_errors_carry_offsets():
    with pytest.raises(G.GraphFormatError) as err:
        G.parse_graph6("B")  # K3 header without data bytes
    assert err.value.offset is not None
    with pytest.raises(G.GraphFormatError):
        G.parse_graph6("Bw" + "w")  # trailing bytes
    with pytest.raises(G.GraphFormatError, match="padding"):
        # '@' header (n=1) followed by a data byte with stray bits
        G.parse_graph6("Aw")


def test_parse_edge_list():
    g = G.parse_edge_list("0 1\n1 2 # comment\n\n")
    assert g.n == 3 and g.edge_count() == 2
    with pytest.raises(G.GraphFormatError):
        G.parse_edge_list("0 1 2")


def test_bipartite_double_edge_count(rng):
    for _ in range(5):
        n = int(rng.integers(3, 12))
        a = np.triu((rng.random((n, n)) < 0.5).astype(np.uint8), 1)
        g = G.Graph(a | a.T)
        d = G.bipartite_double(g)
        assert d.n == 2 * n
        assert d.edge_count() == 2 * g.edge_count()
        # bipartite: no edges inside either half
        assert not d.adjacency[:n, :n].any() and not d.adjacency[n:, n:].any()


def test_double_of_k2():
    d = G.bipartite_double(G.graph_from_edges(2, [(0, 1)]))
    assert d.edge_count() == 2


def test_hadamard_graph_rejects_wrong_order():
    with pytest.raises(ValueError):
        G.hadamard_graph(np.array([[1, 1], [1, -1]]))
    bad = np.ones((12, 12), dtype=int)
    with pytest.raises(ValueError, match="Hadamard"):
        G.hadamard_graph(bad)


def test_hadamard_graph_array_and_row_negation():
    h = G.paley_hadamard_12()
    g = G.hadamard_graph(h)
    assert g.n == 48 and g.is_regular() and int(g.degrees()[0]) == 12
    arr = G.verify_distance_regular(G.distance_matrices(g))
    assert isinstance(arr, G.IntersectionArray)
    assert arr.b == (12, 11, 6, 1) and arr.c == (1, 6, 11, 12)
    h2 = h.copy()
    h2[3] = -h2[3]
    arr2 = G.verify_distance_regular(G.distance_matrices(G.hadamard_graph(h2)))
    assert (arr2.b, arr2.c) == (arr.b, arr.c)


def test_doubled_odd_counts_and_small_case():
    from math import comb

    for k in (2, 3, 4):
        g = G.doubled_odd_graph(k)
        assert g.n == comb(2 * k + 1, k) + comb(2 * k + 1, k + 1)
    g = G.doubled_odd_graph(3)
    assert g.n == 70 and int(g.degrees()[0]) == 4 and g.is_regular()
    # k=2 gives the 20-vertex inclusion graph; brute-force BFS oracle
    small = G.doubled_odd_graph(2)
    assert small.n == 20 and g.is_regular() and int(small.degrees()[0]) == 3
    ds = G.distance_matrices(small)
    assert ds.diameter == 5
    with pytest.raises(ValueError):
        G.doubled_odd_graph(1)


def test_distance_matrices_small():
    k3 = G.graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    ds = G.distance_matrices(k3)
    assert ds.diameter == 1
    assert np.array_equal(ds.matrices[1], k3.adjacency)
    c4 = cycle(4)
    ds = G.distance_matrices(c4)
    assert ds.diameter == 2
    assert (ds.matrices[2].sum(axis=1) == 1).all()  # antipodal matching


def test_distance_matrices_partition_and_disconnected(rng):
    g = FX.fixture_graph("doro")
    ds = G.distance_matrices(g)
    assert ds.diameter == 3
    total = sum(m.astype(np.int64) for m in ds.matrices)
    assert (total == 1).all()
    two = G.graph_from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="disconnected"):
        G.distance_matrices(two)


def test_verify_distance_regular_fixtures():
    _, _, arr = FX.fixture_system("foster")
    assert arr.b == (3, 2, 2, 2, 2, 1, 1, 1) and arr.c == (1, 1, 1, 1, 2, 2, 2, 3)
    _, _, arr = FX.fixture_system("gh33")
    assert arr.b == (4, 3, 3, 3, 3, 3) and arr.c == (1, 1, 1, 1, 1, 4)


def test_verify_distance_regular_witness():
    p3 = G.graph_from_edges(3, [(0, 1), (1, 2)])
    res = G.verify_distance_regular(G.distance_matrices(p3))
    assert isinstance(res, G.RegularityWitness)
    assert res.count_a != res.count_b


def test_intersection_array_consistency_all_fixtures():
    for name in FX.FIXTURE_NAMES:
        _, _, arr = FX.fixture_system(name)
        k = arr.valencies
        for i in range(arr.diameter):
            assert k[i] * arr.b[i] == k[i + 1] * arr.c[i]
