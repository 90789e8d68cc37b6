import json
from itertools import combinations

import pytest
from oracles import brute_has_cycle, has_c4_common_neighbours

from cyclemod.canon import canonical_form
from cyclemod.extremal_search import (
    SearchConfig,
    SearchResult,
    cache_path,
    cached_ex_exact,
    construction_lower_bound,
    ex_c4_crosscheck,
    ex_exact,
    formula_bound,
    generate_levels,
    load_cached_value,
    refute_above_bound,
)
from cyclemod.gadgets import build_Gn
from cyclemod.graph_core import Graph, from_graph6
from cyclemod.modcycle import ResidueClass, has_cycle_mod

FORMULA = {2: 1, 3: 3, 4: 4, 5: 6, 6: 7, 7: 9, 8: 11, 9: 12, 10: 14}


def test_formula_bound_values():
    assert {n: formula_bound(n).value for n in FORMULA} == FORMULA
    assert formula_bound(13).value == 19
    with pytest.raises(ValueError):
        formula_bound(0)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(5, mode="guess")
    with pytest.raises(ValueError):
        SearchConfig(5, mode="refute")
    with pytest.raises(ValueError):
        SearchConfig(5, workers=0)
    with pytest.raises(ValueError):
        ex_exact(SearchConfig(12))


@pytest.mark.parametrize("n", range(2, 8))
def test_exact_small(n):
    res = ex_exact(SearchConfig(n))
    assert res.complete and res.max_edges == FORMULA[n]
    for g6 in res.extremal_graphs:
        g = from_graph6(g6)
        assert g.m == res.max_edges and has_cycle_mod(g) is None


@pytest.mark.parametrize("n", range(2, 8))
def test_pruning_does_not_change_the_answer(n):
    a = ex_exact(SearchConfig(n))
    b = ex_exact(SearchConfig(n, prune=False))
    assert a.max_edges == b.max_edges
    assert sorted(a.extremal_graphs) == sorted(b.extremal_graphs)


def test_gn_is_among_extremal_graphs():
    for n in (5, 6, 7, 8):
        res = ex_exact(SearchConfig(n))
        forms = {canonical_form(from_graph6(s)) for s in res.extremal_graphs}
        assert canonical_form(build_Gn(n).graph) in forms


def test_levels_are_isomorph_free_and_complete():
    # n=5, all graphs: each level has exactly one graph per class
    levels, _ = generate_levels(5, None)
    assert [len(lv) for lv in levels] == [1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1]
    for lv in levels:
        assert len({canonical_form(from_graph6(s)) for s in lv}) == len(lv)


def test_c4_free_levels_match_filtered_enumeration():
    for n in range(2, 7):
        everything, _ = generate_levels(n, None)
        expected = sorted(s for lv in everything for s in lv if not has_c4_common_neighbours(from_graph6(s)))
        free, _ = generate_levels(n, ResidueClass(0, 4))
        assert sorted(s for lv in free for s in lv) == expected


@pytest.mark.parametrize("n", range(2, 8))
def test_crosscheck_agrees(n):
    assert ex_c4_crosscheck(n) == ex_exact(SearchConfig(n)).max_edges


def test_refute_mode():
    res = refute_above_bound(SearchConfig(8, "refute", target_edges=12))
    assert res.complete and not res.exists and res.witness is None
    res = refute_above_bound(SearchConfig(8, "refute", target_edges=11))
    assert res.exists
    g = from_graph6(res.witness)
    assert g.m == 11 and has_cycle_mod(g) is None
    res = refute_above_bound(SearchConfig(4, "refute", target_edges=7))
    assert not res.exists
    with pytest.raises(ValueError):
        refute_above_bound(SearchConfig(5))


def test_budget_exhaustion_is_reported():
    res = ex_exact(SearchConfig(7, node_budget=10))
    assert not res.complete and res.max_edges == -1
    res = refute_above_bound(SearchConfig(7, "refute", target_edges=10, node_budget=10))
    assert not res.complete and not res.exists


def test_construction_lower_bound():
    assert construction_lower_bound(9) == 12
    assert construction_lower_bound(9, ResidueClass(1, 4)) == 0


def test_result_json_round_trip():
    res = ex_exact(SearchConfig(5))
    text = res.to_json()
    assert "millis" not in json.loads(text)
    back = SearchResult.from_json(res.to_json(timing=True))
    assert back.max_edges == res.max_edges and back.extremal_graphs == res.extremal_graphs
    assert res.to_json() == ex_exact(SearchConfig(5)).to_json()


def test_cache(tmp_path):
    assert load_cached_value(tmp_path, 6) is None
    res = cached_ex_exact(SearchConfig(6), tmp_path)
    assert cache_path(tmp_path, 6, "exact").exists()
    assert load_cached_value(tmp_path, 6) == res.max_edges == 7
    again = cached_ex_exact(SearchConfig(6), tmp_path)
    assert again.extremal_graphs == res.extremal_graphs


def test_parallel_search_matches_serial():
    a = ex_exact(SearchConfig(7))
    b = ex_exact(SearchConfig(7, workers=2))
    assert a.extremal_graphs == b.extremal_graphs and a.level_counts == b.level_counts


def test_bipartite_mode():
    res = ex_exact(SearchConfig(6, bipartite=True))
    assert res.max_edges == 6
    assert all(from_graph6(s).is_bipartite() for s in res.extremal_graphs)


@pytest.mark.parametrize("n", range(2, 7))
def test_level_counts_match_naive_labelled_enumeration(n):
    """Generate every labelled graph, drop those with a 4-cycle, dedupe by canonical form."""
    pairs = list(combinations(range(n), 2))
    per_level: dict[int, set] = {}
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if not has_c4_common_neighbours(g):
            per_level.setdefault(g.m, set()).add(canonical_form(g))
    expected = [len(per_level[m]) for m in sorted(per_level)]
    assert ex_exact(SearchConfig(n, prune=False)).level_counts == expected


@pytest.mark.parametrize("n", range(2, 9))
def test_extremal_graphs_connected_and_reverified(n):
    res = ex_exact(SearchConfig(n))
    assert len(set(res.extremal_graphs)) == len(res.extremal_graphs)
    for s in res.extremal_graphs:
        g = from_graph6(s)
        assert g.is_connected()
        assert not brute_has_cycle(g.n, g.edges(), 0, 4)
