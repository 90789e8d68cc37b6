import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_cycle_lengths, graphs, nx_cycle_set

from cyclemod.gadgets import build_L8
from cyclemod.graph_core import Graph, GraphError, complete_graph, cycle_graph, path_graph
from cyclemod.modcycle import (
    ZERO_MOD_FOUR,
    CycleCapExceeded,
    CycleWitness,
    ResidueClass,
    creates_cycle_mod,
    enumerate_cycles,
    has_cycle_mod,
    has_cycle_mod_through_edge,
    normalize_cycle,
    residue_histogram,
    shortest_cycle_mod,
)

residues = st.integers(2, 5).flatmap(lambda k: st.tuples(st.integers(0, k - 1), st.just(k)))


def test_residue_class_validation():
    with pytest.raises(ValueError):
        ResidueClass(4, 4)
    with pytest.raises(ValueError):
        ResidueClass(0, 1)
    with pytest.raises(ValueError):
        ResidueClass(-1, 3)


def test_small_known_cases():
    w = has_cycle_mod(cycle_graph(4))
    assert w is not None and str(w) == "0 1 2 3"
    assert has_cycle_mod(cycle_graph(5)) is None
    assert has_cycle_mod(cycle_graph(8)) is not None
    assert has_cycle_mod(path_graph(10)) is None
    assert len(enumerate_cycles(complete_graph(4))) == 7


def test_k5_histogram():
    # 10 triangles, 15 four-cycles, 12 five-cycles
    h = residue_histogram(complete_graph(5), 4)
    assert h.counts == [15, 12, 0, 10]
    assert h.total == 37


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7), residues)
def test_detector_matches_brute_force(g, rc):
    ell, k = rc
    lengths = brute_cycle_lengths(g.n, g.edges())
    w = has_cycle_mod(g, ResidueClass(ell, k))
    assert (w is not None) == any(L % k == ell for L in lengths)
    if w is not None:
        assert w.validate(g, ResidueClass(ell, k))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_enumeration_matches_networkx(g):
    ours = {frozenset(frozenset(e) for e in c.edges()) for c in enumerate_cycles(g)}
    assert ours == nx_cycle_set(g)
    for c in enumerate_cycles(g):
        assert c.vertices == normalize_cycle(c.vertices)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9), st.data())
def test_monotone_under_edge_addition(g, data):
    if has_cycle_mod(g) is None or not g.non_edges():
        return
    u, v = data.draw(st.sampled_from(g.non_edges()))
    assert has_cycle_mod(g.add_edge(u, v)) is not None


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=4, max_n=9))
def test_fast_path_agrees(g):
    a = has_cycle_mod(g) is not None
    b = has_cycle_mod(g, fast_path=True)
    assert a == (b is not None)
    if b is not None:
        assert b.validate(g, ZERO_MOD_FOUR)


def test_fast_path_on_dense_graph():
    g = complete_graph(9)
    w = has_cycle_mod(g, fast_path=True)
    assert w is not None and w.length == 4


def test_cap_raises_instead_of_answering_no():
    g = complete_graph(6)
    with pytest.raises(CycleCapExceeded):
        enumerate_cycles(g, cap=5)
    with pytest.raises(CycleCapExceeded):
        has_cycle_mod(g, ResidueClass(0, 7), cap=5)


def test_l8_through_edge_and_non_edges():
    g = build_L8().graph
    assert has_cycle_mod(g) is None
    for u, v in g.edges():
        assert has_cycle_mod_through_edge(g, u, v) is None
    non_edges = g.non_edges()
    assert len(non_edges) == 17
    for u, v in non_edges:
        h = g.add_edge(u, v)
        expected = has_cycle_mod(h) is not None
        assert creates_cycle_mod(g, u, v) == expected
        w = has_cycle_mod_through_edge(h, u, v)
        assert (w is not None) == expected
        if w is not None:
            assert w.validate(h, ZERO_MOD_FOUR) and (u, v) in {tuple(sorted(e)) for e in w.edges()}


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=8), st.data())
def test_through_edge_matches_enumeration(g, data):
    if not g.m:
        return
    u, v = data.draw(st.sampled_from(g.edges()))
    expected = any(
        c.length % 4 == 0 and (u, v) in {tuple(sorted(e)) for e in c.edges()} for c in enumerate_cycles(g)
    )
    assert (has_cycle_mod_through_edge(g, u, v) is not None) == expected


def test_through_edge_requires_edge():
    with pytest.raises(GraphError):
        has_cycle_mod_through_edge(path_graph(3), 0, 2)


def test_shortest_cycle():
    g = cycle_graph(8).add_edge(0, 4)  # chord splits into two 5-cycles
    w = shortest_cycle_mod(g, ResidueClass(0, 4))
    assert w.length == 8
    assert shortest_cycle_mod(g, ResidueClass(1, 4)).length == 5
    assert shortest_cycle_mod(g, ResidueClass(2, 4)) is None


def test_witness_validation_rejects_non_cycles():
    g = cycle_graph(4)
    assert not CycleWitness((0, 1, 2)).validate(g)
    assert not CycleWitness((0, 1, 1, 2)).validate(g)
    assert CycleWitness((0, 1, 2, 3)).validate(g, ZERO_MOD_FOUR)
    assert not CycleWitness((0, 1, 2, 3)).validate(g, ResidueClass(1, 4))


def test_empty_and_tiny_graphs():
    for n in range(4):
        assert has_cycle_mod(Graph.empty(n)) is None
        assert enumerate_cycles(Graph.empty(n)) == []
