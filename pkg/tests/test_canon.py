from itertools import combinations

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import graphs, to_nx

from cyclemod.canon import (
    canonical_form,
    canonical_labeling,
    edge_orbit_representatives,
    is_isomorphic,
    vertex_orbits,
)
from cyclemod.graph_core import Graph, complete_bipartite, cycle_graph, path_graph


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def test_class_counts_small_n():
    # graphs on n unlabelled vertices: 1, 2, 4, 11, 34
    for n, expected in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)]:
        assert len({canonical_form(g) for g in all_graphs(n)}) == expected


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_relabel_invariance(data):
    g = data.draw(graphs(max_n=9))
    perm = data.draw(st.permutations(range(g.n)))
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_agrees_with_networkx(a, b):
    if a.n != b.n:
        return
    assert is_isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_labeling_maps_to_canonical_graph(g):
    lab = canonical_labeling(g)
    assert g.relabel(lab.labeling) == lab.graph
    for gamma in lab.generators:
        assert g.relabel(gamma) == g


def test_orbits_of_symmetric_graphs():
    lab = canonical_labeling(cycle_graph(6))
    assert set(vertex_orbits(6, lab.generators)) == {0}
    lab = canonical_labeling(path_graph(5))
    assert vertex_orbits(5, lab.generators) == [0, 1, 2, 1, 0]
    g = complete_bipartite(2, 3)
    lab = canonical_labeling(g)
    reps = edge_orbit_representatives(g.non_edges(), lab.generators)
    assert reps == [(0, 1), (2, 3)]


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7))
def test_edge_orbits_cover_all_child_classes(g):
    """Adding one representative per orbit reaches every one-edge extension class."""
    lab = canonical_labeling(g)
    reps = edge_orbit_representatives(g.non_edges(), lab.generators)
    via_reps = {canonical_form(g.add_edge(*e)) for e in reps}
    via_all = {canonical_form(g.add_edge(*e)) for e in g.non_edges()}
    assert via_reps == via_all
    assert len(reps) == len(via_all)
