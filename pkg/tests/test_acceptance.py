"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary. Every comparison is between
exact integers or booleans, so the tolerance is zero throughout.
Set CYCLEMOD_FUZZ_SEED to rotate the lemma campaign seed.
"""

import os
from functools import lru_cache

import pytest
from oracles import bipartite_max_bruteforce, brute_has_cycle, has_c4_common_neighbours

from cyclemod.canon import canonical_form
from cyclemod.extremal_search import (
    SearchConfig,
    ex_c4_crosscheck,
    ex_exact,
    formula_bound,
    generate_levels,
    refute_above_bound,
)
from cyclemod.gadgets import build_Gn, build_L8, build_L13, switch_at_2cut
from cyclemod.graph_core import block_decomposition, from_graph6
from cyclemod.lemma_lab import GENERATORS, TrialConfig, bipartite_maxima, generate, verify
from cyclemod.modcycle import ResidueClass, has_cycle_mod

EXPECTED_EX = {2: 1, 3: 3, 4: 4, 5: 6, 6: 7, 7: 9, 8: 11, 9: 12, 10: 14}
LEMMA_SEED = int(os.environ.get("CYCLEMOD_FUZZ_SEED", "20240601"))
LEMMA_TRIALS = 1000
LEMMA_BUDGET = 24
SWITCH_TRIALS = 500


@lru_cache(maxsize=None)
def exact(n):
    return ex_exact(SearchConfig(n))


@lru_cache(maxsize=None)
def all_classes(n):
    levels, _ = generate_levels(n, None)
    return [from_graph6(s) for lv in levels for s in lv]


def test_c1_extremal_table(criterion):
    with criterion(1, "ex_exact(n) == floor(19(n-1)/12) for n = 2..10 (exact)"):
        got = {}
        for n in EXPECTED_EX:
            res = exact(n)
            assert res.complete
            got[n] = res.max_edges
        assert got == EXPECTED_EX
        assert {n: formula_bound(n).value for n in EXPECTED_EX} == EXPECTED_EX


def test_c2_sharpness(criterion):
    with criterion(2, "build_Gn(n) has floor(19(n-1)/12) edges and no (0 mod 4)-cycle, n = 2..60"):
        for n in range(2, 61):
            g = build_Gn(n).graph
            assert g.n == n
            assert g.m == 19 * (n - 1) // 12
            assert g.is_connected()
            assert has_cycle_mod(g) is None


def test_c3_fixed_extremal_graphs(criterion):
    with criterion(3, "L8 = (8, 11), L13 = (13, 19), both cycle-free single blocks; L8 in the n = 8 catalog"):
        l8, l13 = build_L8().graph, build_L13().graph
        assert (l8.n, l8.m) == (8, 11)
        assert (l13.n, l13.m) == (13, 19)
        for g in (l8, l13):
            assert has_cycle_mod(g) is None
            assert len(block_decomposition(g).blocks) == 1
        catalog = {canonical_form(from_graph6(s)) for s in exact(8).extremal_graphs}
        assert canonical_form(l8) in catalog


def test_c4_refutation(criterion):
    with criterion(4, "no n-vertex (0 mod 4)-free graph with bound + 1 edges, n = 2..10"):
        for n in EXPECTED_EX:
            res = refute_above_bound(SearchConfig(n, "refute", target_edges=EXPECTED_EX[n] + 1))
            assert res.complete and not res.exists


def test_c5_base_case_equivalence(criterion):
    with criterion(5, "(0 mod 4)-free == C4-free for n <= 7, and ex_c4_crosscheck(n) == ex_exact(n)"):
        for n in range(2, 8):
            for g in all_classes(n):
                assert (has_cycle_mod(g) is None) == (not has_c4_common_neighbours(g))
            assert ex_c4_crosscheck(n) == exact(n).max_edges


@pytest.mark.parametrize("lemma", sorted(GENERATORS))
def test_c6_lemma_suites(criterion, lemma):
    with criterion(6, f"{lemma}: {LEMMA_TRIALS} trials at size budget {LEMMA_BUDGET}, zero failures"):
        rep = verify(lemma, TrialConfig(seed=LEMMA_SEED, trials=LEMMA_TRIALS, size_budget=LEMMA_BUDGET))
        assert rep.trials_run == LEMMA_TRIALS and rep.skipped == 0
        assert rep.hypothesis_failures == 0, rep.first_counterexample
        assert rep.failures == 0, rep.first_counterexample
        assert rep.elapsed < 60


def test_c7_bipartite_bound(criterion):
    with criterion(7, "bipartite (0 mod 4)-free maxima <= floor(3(n-2)/2) for n = 4..9, attained somewhere"):
        maxima = bipartite_maxima()
        assert sorted(maxima) == list(range(4, 10))
        for n, m in maxima.items():
            assert m == bipartite_max_bruteforce(n)
            assert m <= 3 * (n - 2) // 2
        assert any(m == 3 * (n - 2) // 2 for n, m in maxima.items())
        assert verify("BipartiteBound").ok


def test_c8_switching(criterion):
    with criterion(8, f"switching on {SWITCH_TRIALS} graphs with a 2-cut keeps e and the verdict; involution"):
        rep = verify("Switching", TrialConfig(seed=LEMMA_SEED, trials=SWITCH_TRIALS))
        assert rep.ok
        for t in range(SWITCH_TRIALS):
            inst = generate("Switching", LEMMA_SEED, t, LEMMA_BUDGET)
            g = inst.graph
            x, y = inst.parts["cut"]
            h = switch_at_2cut(g, x, y, inst.parts["H"])
            assert h.m == g.m
            assert (has_cycle_mod(h) is None) == (has_cycle_mod(g) is None)
            assert switch_at_2cut(h, x, y, inst.parts["H"]) == g


def test_c9_oracle_trust(criterion):
    with criterion(9, "detector == naive brute force on every class with n <= 7 for (0,4), (0,2), (1,3)"):
        counts = [len(all_classes(n)) for n in range(1, 8)]
        assert counts == [1, 2, 4, 11, 34, 156, 1044]
        disagreements = 0
        for n in range(1, 8):
            for g in all_classes(n):
                for ell, k in ((0, 4), (0, 2), (1, 3)):
                    ours = has_cycle_mod(g, ResidueClass(ell, k)) is not None
                    if ours != brute_has_cycle(g.n, g.edges(), ell, k):
                        disagreements += 1
        assert disagreements == 0
