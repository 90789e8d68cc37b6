import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import graphs, to_nx

from cyclemod.graph_core import (
    Graph,
    GraphError,
    block_decomposition,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    find_2cuts,
    from_edgelist,
    from_graph6,
    path_graph,
    read_graph,
    rho,
    to_edgelist,
    to_graph6,
    write_graph,
)


def test_basic_counts():
    g = complete_graph(5)
    assert (g.n, g.m) == (5, 10)
    assert g.degrees() == [4] * 5
    assert cycle_graph(6).m == 6
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert complete_bipartite(3, 3).m == 9


def test_from_edges_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_edge_updates_are_pure():
    g = path_graph(3)
    h = g.add_edge(0, 2)
    assert g.m == 2 and h.m == 3
    assert h.remove_edge(0, 2) == g


def test_graph6_known_strings():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(Graph.empty(1)) == "@"
    assert to_graph6(Graph.empty(0)) == "?"
    assert from_graph6("Bw") == complete_graph(3)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=20))
def test_graph6_matches_networkx(g):
    ours = to_graph6(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert from_graph6(ours) == g


@pytest.mark.parametrize("n", [62, 63, 64])
def test_graph6_long_header(n):
    g = cycle_graph(n)
    s = to_graph6(g)
    assert s.startswith("~") == (n >= 63)
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert from_graph6(s) == g


def test_order_cap():
    with pytest.raises(GraphError):
        Graph.empty(65)


def test_graph6_rejects_garbage():
    for bad in ["", "B", "Bw?", "B\x7f", "Bx"]:
        with pytest.raises(GraphError):
            from_graph6(bad)


def test_graph6_header_prefix_accepted():
    assert from_graph6(">>graph6<<Bw") == complete_graph(3)


@given(graphs(max_n=12))
def test_edgelist_round_trip(g):
    assert from_edgelist(to_edgelist(g)) == g
    assert read_graph(write_graph(g, "edgelist"), "edgelist") == g
    assert read_graph(write_graph(g, "graph6"), "graph6") == g


def test_edgelist_comments_and_errors():
    g = from_edgelist("# triangle\n3 3\n0 1\n1 2 # inline\n2 0\n")
    assert g == complete_graph(3)
    with pytest.raises(GraphError):
        from_edgelist("3 2\n0 1\n")
    with pytest.raises(GraphError):
        from_edgelist("3 1\n0 7\n")


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=12))
def test_blocks_match_networkx(g):
    bd = block_decomposition(g)
    h = to_nx(g)
    theirs = sorted(tuple(sorted(c)) for c in nx.biconnected_components(h))
    assert sorted(bd.blocks) == theirs
    assert bd.cut_vertices == frozenset(nx.articulation_points(h))


def test_find_2cuts_small_cases():
    assert find_2cuts(cycle_graph(5)) == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    assert find_2cuts(complete_graph(4)) == []
    with pytest.raises(GraphError):
        find_2cuts(Graph.empty(3))


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=3, max_n=9))
def test_find_2cuts_by_definition(g):
    if not g.is_connected():
        return
    h = to_nx(g)
    expected = []
    for x in range(g.n):
        for y in range(x + 1, g.n):
            k = h.copy()
            k.remove_nodes_from([x, y])
            if k.number_of_nodes() and not nx.is_connected(k):
                expected.append((x, y))
    assert find_2cuts(g) == expected


@given(graphs(max_n=10), st.data())
def test_rho_identity(g, data):
    U = data.draw(st.sets(st.integers(0, g.n - 1))) if g.n else set()
    rest = [v for v in range(g.n) if v not in U]
    inner = g.induced(rest)[0].m
    assert rho(g, U) == g.m - inner


def test_rho_range_check():
    with pytest.raises(GraphError):
        rho(cycle_graph(4), [4])


@given(graphs(max_n=10))
def test_connectivity_and_bipartite_vs_networkx(g):
    h = to_nx(g)
    assert g.is_bipartite() == nx.is_bipartite(h)
    assert sorted(map(sorted, g.components())) == sorted(sorted(c) for c in nx.connected_components(h))
    if g.n:
        assert g.is_connected() == nx.is_connected(h)
