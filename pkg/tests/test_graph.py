import pytest
from hypothesis import given, settings, strategies as st

from curvature_transfer.errors import GraphFormatError
from curvature_transfer.generators import complete, cycle, erdos_renyi
from curvature_transfer.graph import (EdgeKey, Graph, bfs_distances, load_edge_list,
                                      truncated_distances, write_edge_list)


def test_path_p3():
    g = load_edge_list("0 1\n1 2\n")
    assert g.vertex_count == 3 and g.edge_count == 2
    assert g.degrees.tolist() == [1, 2, 1]


def test_self_loop_rejected():
    with pytest.raises(GraphFormatError, match="simple"):
        load_edge_list("0 0\n")


def test_duplicate_rejected_and_dedup_warns():
    with pytest.raises(GraphFormatError, match="line 2"):
        load_edge_list("0 1\n1 0\n")
    with pytest.warns(UserWarning, match="duplicate"):
        g = load_edge_list("0 1\n1 0\n", dedup=True)
    assert g.edge_count == 1


def test_malformed_token_reports_line():
    with pytest.raises(GraphFormatError, match="line 3"):
        load_edge_list("# comment\n0 1\n1 two\n")
    with pytest.raises(GraphFormatError, match="line 1"):
        load_edge_list("0 1 2\n")
    with pytest.raises(GraphFormatError):
        load_edge_list("-1 2\n")


def test_graph_h_degrees(graph_h):
    assert graph_h.degrees.tolist() == [3, 3, 2, 2, 2]
    assert graph_h.degree(0) == 3


def test_degree_examples():
    assert complete(5).degree(3) == 4
    assert cycle(6).degree(2) == 2
    with pytest.raises(IndexError):
        cycle(6).degree(6)


def test_sparse_ids_remapped():
    g = load_edge_list("10 500\n500 7\n")
    assert g.vertex_count == 3
    assert g.labels.tolist() == [7, 10, 500]
    assert g.has_edge(1, 2) and g.has_edge(0, 2) and not g.has_edge(0, 1)


def test_comments_and_blank_lines():
    g = load_edge_list("# header\n\n0 1\n  # indented comment\n1 2\n")
    assert g.edge_count == 2


def test_edge_key_canonical(graph_h):
    assert graph_h.edge_key(1, 0) == EdgeKey(0, 1)
    with pytest.raises(KeyError):
        graph_h.edge_key(2, 3)
    assert list(graph_h.edges())[0] == EdgeKey(0, 1)


def test_truncated_distance_examples(graph_h):
    d = truncated_distances(cycle(6), [0], 3)
    assert d[(0, 3)] == 3
    d = truncated_distances(complete(5), [0], 1)
    assert all(d[(0, x)] == 1 for x in range(1, 5))
    d = truncated_distances(graph_h, [3], 3)
    assert d[(3, 4)] == 1 and d[(3, 2)] == 2
    assert (0, 3) not in truncated_distances(cycle(6), [0], 2)


def test_roundtrip_file(tmp_path, graph_h):
    path = tmp_path / "h.txt"
    with open(path, "w") as fh:
        write_edge_list(graph_h, fh, ["note"])
    with open(path) as fh:
        assert load_edge_list(fh) == graph_h


def test_isolated_vertices_survive_roundtrip():
    g = Graph.from_edges(6, [(0, 1), (2, 3)])
    assert load_edge_list(write_edge_list(g)).vertex_count == 6


def _check_invariants(g: Graph):
    adj = g.adjacency
    for u, nb in enumerate(adj):
        assert list(nb) == sorted(set(nb)), "strictly increasing"
        assert u not in nb, "no self loops"
        for v in nb:
            assert u in adj[v], "symmetric"
    assert 2 * g.edge_count == sum(len(nb) for nb in adj)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 40), p=st.floats(0, 1), seed=st.integers(0, 2**64 - 1))
def test_roundtrip_and_invariants_random(n, p, seed):
    g = erdos_renyi(n, p, seed)
    _check_invariants(g)
    assert load_edge_list(write_edge_list(g)) == g


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 30), p=st.floats(0.05, 0.6), seed=st.integers(0, 1000),
       depth=st.integers(0, 4))
def test_truncated_agrees_with_full_bfs(n, p, seed, depth):
    g = erdos_renyi(n, p, seed)
    d = truncated_distances(g, range(n), depth)
    for s in range(n):
        full = bfs_distances(g, s)
        for x in range(n):
            if full[x] >= 0 and full[x] <= depth:
                assert d[(s, x)] == full[x]
            else:
                assert (s, x) not in d


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
