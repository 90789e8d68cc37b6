"""Randomised verification campaigns for the structural lemmas.

Each lemma gets a constructive generator that assembles an instance of its
hypothesis from random parameters, and a checker that re-derives the
hypothesis from the graph plus the recorded vertex sequences of every path
and cycle (never from the generator's parameters). Instances that fail the
checker are counted as hypothesis failures; instances that pass it are then
tested for the conclusion with the cycle detector.

Parameter distributions: every path or cycle length is drawn uniformly from
its parity-respecting range ``[lo, lo + spread]`` where ``spread`` shares the
size budget evenly among the parts, and draws whose total order exceeds the
budget are rejected. Trivial tails, coinciding bridge ends and similar
corners are forced in a fixed fraction of trials.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable

from .gadgets import (
    K4_EDGES,
    K4_SQUARES,
    K4_TRIANGLES,
    AdjustablePathSpec,
    Builder,
    GadgetError,
    K4SubdivisionSpec,
    ThetaSpec,
    add_adjustable_path,
    build_k4_subdivision,
    build_necklace,
    build_subdivision,
    build_theta,
    switch_at_2cut,
)
from .graph_core import Graph, complete_bipartite, complete_graph, from_graph6, to_graph6
from .modcycle import ZERO_MOD_FOUR, enumerate_cycles, has_cycle_mod

LEMMA_IDS = (
    "Theta_N_H",
    "Planar",
    "Bridge1",
    "Bridge2",
    "Bridge3",
    "BridgeCrossed",
    "BridgeAdjustable",
    "TwoCycle1",
    "TwoCycle2",
    "TwoCycle3",
    "ThreeCycleBridge",
    "ThreeCyclePath",
    "BipartiteBound",
    "Switching",
)

BIPARTITE_RANGE = range(4, 10)
MAX_REDRAWS = 50


class Infeasible(RuntimeError):
    """The generator cannot meet the hypothesis within the size budget."""


class HypothesisViolation(AssertionError):
    pass


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 1000
    size_budget: int = 24
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 5 <= self.size_budget <= 40:
            raise ValueError("size_budget must be in 5..40")


@dataclass
class Instance:
    graph: Graph
    parts: dict[str, list[int]]
    params: dict = field(default_factory=dict)


@dataclass
class LemmaReport:
    lemma: str
    seed: int
    trials_run: int
    size_budget: int
    failures: int = 0
    hypothesis_failures: int = 0
    skipped: int = 0
    first_counterexample: dict | None = None
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.hypothesis_failures == 0 and self.skipped == 0

    def to_json(self, timing: bool = False) -> str:
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


def trial_rng(lemma: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{lemma}/{seed}/{trial}")


# sampling helpers ---------------------------------------------------------


def _draw_len(rng: random.Random, lo: int, spread: int, parity: int | None) -> int:
    while True:
        v = rng.randint(lo, lo + max(spread, 1))
        if parity is None or v % 2 == parity:
            return v


def _sample(rng: random.Random, draw: Callable[[], dict], order: Callable[[dict], int], budget: int) -> dict:
    for _ in range(500):
        p = draw()
        if order(p) <= budget:
            return p
    raise Infeasible(f"no parameters within size budget {budget}")


def _adj_spec(rng: random.Random, spread: int, force_trivial: bool = False) -> AdjustablePathSpec:
    L = _draw_len(rng, 3, spread, 1)
    if force_trivial:
        t1, t2 = rng.choice([(0, 0), (0, _draw_len(rng, 1, spread, None)), (_draw_len(rng, 1, spread, None), 0)])
    else:
        t1 = _draw_len(rng, 0, spread, None)
        t2 = _draw_len(rng, 0, spread, None)
    return AdjustablePathSpec(t1, L, t2, rng.randint(1, L - 1))


def _spec_dict(s: AdjustablePathSpec) -> dict:
    return {"tail1": s.tail1, "cycle_len": s.cycle_len, "tail2": s.tail2, "attach_gap": s.attach_gap}


# checker helpers ----------------------------------------------------------------


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisViolation(msg)


def _path_edges(seq):
    return {frozenset(e) for e in zip(seq, seq[1:])}


def _cycle_edges(seq):
    return {frozenset((seq[i], seq[(i + 1) % len(seq)])) for i in range(len(seq))}


def _is_path(g: Graph, seq: list[int], name: str, min_len: int = 1) -> int:
    _need(len(seq) >= min_len + 1, f"{name}: length below {min_len}")
    _need(len(set(seq)) == len(seq), f"{name}: repeated vertex")
    _need(all(0 <= v < g.n for v in seq), f"{name}: vertex out of range")
    _need(all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])), f"{name}: not a path of the graph")
    return len(seq) - 1


def _is_cycle(g: Graph, seq: list[int], name: str) -> int:
    _need(len(seq) >= 3 and len(set(seq)) == len(seq), f"{name}: not a simple cycle")
    _need(all(0 <= v < g.n for v in seq), f"{name}: vertex out of range")
    _need(all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))), f"{name}: not a cycle of the graph")
    return len(seq)


def _covers(g: Graph, paths: list[list[int]], cycles: list[list[int]]) -> None:
    es = set()
    vs = set()
    for p in paths:
        es |= _path_edges(p)
        vs |= set(p)
    for c in cycles:
        es |= _cycle_edges(c)
        vs |= set(c)
    _need(es == {frozenset(e) for e in g.edges()}, "parts do not cover exactly the edges of the graph")
    _need(vs == set(range(g.n)), "graph has vertices outside the parts")


def _interior(seq: list[int]) -> set[int]:
    return set(seq[1:-1])


def _check_adjustable(g: Graph, tail1, cyc, tail2, x: int, y: int, name: str) -> set[int]:
    """Odd cycle with disjoint tails x -> cycle and cycle -> y; returns its vertex set."""
    L = _is_cycle(g, cyc, f"{name}.cycle")
    _need(L % 2 == 1, f"{name}: cycle is even")
    cs = set(cyc)
    _need(tail1[0] == x and tail2[-1] == y, f"{name}: wrong ends")
    _is_path(g, tail1, f"{name}.tail1", 0)
    _is_path(g, tail2, f"{name}.tail2", 0)
    _need(tail1[-1] in cs and not (set(tail1[:-1]) & cs), f"{name}: tail1 must meet the cycle only at its end")
    _need(tail2[0] in cs and not (set(tail2[1:]) & cs), f"{name}: tail2 must meet the cycle only at its start")
    _need(not (set(tail1) & set(tail2)), f"{name}: tails intersect")
    return cs | set(tail1) | set(tail2)


def _cycle_positions(cyc: list[int]) -> dict[int, int]:
    return {v: i for i, v in enumerate(cyc)}


def _check_bridge(g: Graph, cyc: list[int], seq: list[int], name: str) -> tuple[int, int]:
    pos = _cycle_positions(cyc)
    _is_path(g, seq, name, 1)
    _need(seq[0] in pos and seq[-1] in pos, f"{name}: ends not on the cycle")
    _need(not (_interior(seq) & set(pos)), f"{name}: interior meets the cycle")
    _need(not (_path_edges(seq) & _cycle_edges(cyc)), f"{name}: shares an edge with the cycle")
    return pos[seq[0]], pos[seq[-1]]


def _span(L: int, i: int, j: int) -> int:
    d = (j - i) % L
    return min(d, L - d)


def _interleaved(L: int, a: tuple[int, int], b: tuple[int, int]) -> bool:
    lo, width = a[0], (a[1] - a[0]) % L
    inside = [0 < (p - lo) % L < width for p in b]
    on_ends = [(p - lo) % L in (0, width) for p in b]
    return not any(on_ends) and inside[0] != inside[1]


def _subdivision_key(u: int, v: int) -> str:
    return f"P{u}_{v}"


def _k4_key(u: int, v: int) -> str:
    return f"P{u + 1}{v + 1}"


def _check_subdivision(g: Graph, base: Graph, branch: list[int], parts: dict, key=_subdivision_key) -> dict:
    _need(len(set(branch)) == len(branch), "branch vertices repeat")
    lengths = {}
    interiors = []
    for u, v in base.edges():
        name = key(u, v)
        seq = parts[name]
        _is_path(g, seq, name)
        _need(seq[0] == branch[u] and seq[-1] == branch[v], f"{name}: wrong ends")
        lengths[(u, v)] = len(seq) - 1
        interiors.append(_interior(seq))
    allin = set()
    for s in interiors:
        _need(not (s & allin) and not (s & set(branch)), "subdivision paths not internally disjoint")
        allin |= s
    _covers(g, [parts[key(u, v)] for u, v in base.edges()], [])
    return lengths


# Lemma: theta / necklace / K4 subdivisions -------------------------------------------


def gen_theta_n_h(rng: random.Random, budget: int, trial: int) -> Instance:
    kind = ("theta_e", "necklace", "H3e", "H4o", "H4e")[trial % 5]
    if kind == "theta_e":
        spread = max(2, (budget - 2) // 3)
        p = _sample(rng, lambda: {"lengths": [_draw_len(rng, 2, spread, 0) for _ in range(3)]},
                    lambda p: sum(p["lengths"]) - 1, budget)
        gad = build_theta(ThetaSpec(*p["lengths"]))
        return Instance(gad.graph, dict(gad.parts), {"kind": kind, **p})
    if kind == "necklace":
        spread = max(1, (budget - 6) // 9)
        force = trial % 3 == 0

        def draw():
            return {"specs": [_adj_spec(rng, spread, force and i == 0) for i in range(3)]}

        p = _sample(rng, draw, lambda p: sum(s.order for s in p["specs"]) - 3, budget)
        gad = build_necklace(*p["specs"])
        parts = {"ends": [gad["x1"], gad["x2"], gad["x3"]], **gad.parts}
        return Instance(gad.graph, parts, {"kind": kind, "specs": [_spec_dict(s) for s in p["specs"]]})
    # K4 subdivisions with a forced parity pattern on one 3- or 4-cycle of K4
    cycles = K4_TRIANGLES if kind == "H3e" else K4_SQUARES
    want = 1 if kind == "H4o" else 0
    spread = max(2, (budget - 4) // 6)

    def draw():
        cyc = rng.choice(cycles)
        forced = {tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))) for i in range(len(cyc))}
        lengths = [
            _draw_len(rng, 2 if (e in forced and want == 0) else 1, spread, want if e in forced else None)
            for e in K4_EDGES
        ]
        return {"lengths": lengths, "pattern_cycle": list(cyc)}

    p = _sample(rng, draw, lambda p: 4 + sum(l - 1 for l in p["lengths"]), budget)
    gad = build_k4_subdivision(K4SubdivisionSpec(tuple(p["lengths"])))
    return Instance(gad.graph, dict(gad.parts), {"kind": kind, **p})


def check_theta_n_h(g: Graph, parts: dict, params: dict) -> None:
    kind = params["kind"]
    if kind == "theta_e":
        ps = [parts["P1"], parts["P2"], parts["P3"]]
        x, y = ps[0][0], ps[0][-1]
        for i, seq in enumerate(ps):
            n_ = _is_path(g, seq, f"P{i + 1}")
            _need(seq[0] == x and seq[-1] == y, "theta paths must share both ends")
            _need(n_ % 2 == 0, f"P{i + 1} is odd")
        for a, b in combinations(ps, 2):
            _need(not (_interior(a) & set(b)), "theta paths not internally disjoint")
        _covers(g, ps, [])
    elif kind == "necklace":
        ends = parts["ends"]
        _need(len(set(ends)) == 3, "necklace ends must be distinct")
        vsets = []
        for i in range(3):
            x, y = ends[i], ends[(i + 1) % 3]
            r = [parts[f"R{i + 1}.{k}"] for k in ("tail1", "cycle", "tail2")]
            vsets.append(_check_adjustable(g, *r, x, y, f"R{i + 1}") - {x, y})
        for a, b in combinations(vsets, 2):
            _need(not (a & b), "adjustable paths not internally disjoint")
        for i, vs in enumerate(vsets):
            _need(not (vs & set(ends)), f"R{i + 1} passes through another end")
        _covers(g, [parts[k] for k in parts if "tail" in k], [parts[k] for k in parts if k.endswith("cycle")])
    else:
        lengths = _check_subdivision(g, complete_graph(4), [0, 1, 2, 3], parts, _k4_key)
        par = {e: l % 2 for e, l in lengths.items()}
        cycles = K4_TRIANGLES if kind.startswith("H3") else K4_SQUARES
        want = 1 if kind.endswith("o") else 0
        ok = any(
            all(par[tuple(sorted((c[i], c[(i + 1) % len(c)])))] == want for i in range(len(c))) for c in cycles
        )
        _need(ok, f"no {len(cycles[0])}-cycle of K4 with the required parity pattern")


# Lemma: non-planar subdivisions -------------------------------------------------------


def gen_planar(rng: random.Random, budget: int, trial: int) -> Instance:
    base = complete_graph(5) if trial % 2 == 0 else complete_bipartite(3, 3)
    spread = max(1, 2 * (budget - base.n) // base.m)
    p = _sample(
        rng,
        lambda: {"lengths": [_draw_len(rng, 1, spread, None) for _ in range(base.m)]},
        lambda p: base.n + sum(l - 1 for l in p["lengths"]),
        budget,
    )
    gad = build_subdivision(base, p["lengths"])
    return Instance(gad.graph, dict(gad.parts), {"base": "K5" if base.n == 5 else "K33", **p})


def check_planar(g: Graph, parts: dict, params: dict) -> None:
    base = complete_graph(5) if params["base"] == "K5" else complete_bipartite(3, 3)
    _check_subdivision(g, base, list(range(base.n)), parts)


# Lemma: bridges of an even cycle ------------------------------------------------------


def _even_cycle(rng, lo, spread):
    return _draw_len(rng, max(lo, 4), spread, 0)


def gen_bridge1(rng, budget, trial):
    spread = max(2, (budget - 5) // 2)

    def draw():
        L = _even_cycle(rng, 4, spread)
        span = 2 * rng.randint(1, L // 4) if L >= 4 else 2
        return {"L": L, "i": rng.randrange(L), "span": span, "len": _draw_len(rng, 2, spread, 0)}

    p = _sample(rng, draw, lambda p: p["L"] + p["len"] - 1, budget)
    b = Builder()
    cyc = b.cycle(p["L"])
    a, c = cyc[p["i"]], cyc[(p["i"] + p["span"]) % p["L"]]
    P1 = b.path(a, c, p["len"])
    return Instance(b.graph(), {"C": cyc, "P1": P1}, p)


def check_bridge1(g, parts, params):
    cyc = parts["C"]
    L = _is_cycle(g, cyc, "C")
    _need(L % 2 == 0, "C is odd")
    i, j = _check_bridge(g, cyc, parts["P1"], "P1")
    _need((len(parts["P1"]) - 1) % 2 == 0, "P1 is odd")
    _need(_span(L, i, j) % 2 == 0, "P1 has odd span")
    _covers(g, [parts["P1"]], [cyc])


def gen_bridge2(rng, budget, trial):
    spread = max(2, (budget - 6) // 3)

    def draw():
        L = _even_cycle(rng, 4, spread)
        pos = sorted(rng.sample(range(L), 4))
        return {"L": L, "pos": pos, "lens": [_draw_len(rng, 2, spread, 0) for _ in range(2)]}

    p = _sample(rng, draw, lambda p: p["L"] + sum(l - 1 for l in p["lens"]), budget)
    b = Builder()
    cyc = b.cycle(p["L"])
    a, bb, c, d = (cyc[i] for i in p["pos"])
    P1 = b.path(a, c, p["lens"][0])
    P2 = b.path(bb, d, p["lens"][1])
    return Instance(b.graph(), {"C": cyc, "P1": P1, "P2": P2}, p)


def check_bridge2(g, parts, params):
    cyc = parts["C"]
    L = _is_cycle(g, cyc, "C")
    _need(L % 2 == 0, "C is odd")
    e1 = _check_bridge(g, cyc, parts["P1"], "P1")
    e2 = _check_bridge(g, cyc, parts["P2"], "P2")
    for k in ("P1", "P2"):
        _need((len(parts[k]) - 1) % 2 == 0, f"{k} is odd")
    _need(not (set(parts["P1"]) & set(parts["P2"])), "bridges are not vertex-disjoint")
    _need(_interleaved(L, e1, e2), "bridges are not crossed")
    _covers(g, [parts["P1"], parts["P2"]], [cyc])


def gen_bridge3(rng, budget, trial):
    spread = max(2, (budget - 7) // 3)

    def draw():
        L = _even_cycle(rng, 4, spread)
        ends = [tuple(rng.sample(range(L), 2)) for _ in range(3)]
        if trial % 4 == 0:
            # chained corner: y1 = x2, y2 = x3 (possibly y3 = x1)
            a = rng.sample(range(L), 3)
            ends = [(a[0], a[1]), (a[1], a[2]), (a[2], a[0])]
        return {"L": L, "ends": ends, "lens": [_draw_len(rng, 2, spread, 0) for _ in range(3)]}

    p = _sample(rng, draw, lambda p: p["L"] + sum(l - 1 for l in p["lens"]), budget)
    b = Builder()
    cyc = b.cycle(p["L"])
    parts = {"C": cyc}
    for k, ((i, j), l) in enumerate(zip(p["ends"], p["lens"]), start=1):
        parts[f"P{k}"] = b.path(cyc[i], cyc[j], l)
    p["ends"] = [list(e) for e in p["ends"]]
    return Instance(b.graph(), parts, p)


def check_bridge3(g, parts, params):
    cyc = parts["C"]
    L = _is_cycle(g, cyc, "C")
    _need(L % 2 == 0, "C is odd")
    ps = [parts["P1"], parts["P2"], parts["P3"]]
    for k, seq in enumerate(ps, start=1):
        _check_bridge(g, cyc, seq, f"P{k}")
        _need((len(seq) - 1) % 2 == 0, f"P{k} is odd")
    for a, b in combinations(ps, 2):
        _need(not (_interior(a) & set(b)) and not (_interior(b) & set(a)), "bridges not internally disjoint")
    _covers(g, ps, [cyc])


def gen_bridge_crossed(rng, budget, trial):
    spread = max(1, (budget - 8) // 6)

    def draw():
        L = _even_cycle(rng, 4, spread)
        pos = sorted(rng.sample(range(L), 4))
        l1 = _draw_len(rng, 2, spread, 0)
        l2 = _draw_len(rng, 2, spread, None)
        spec = _adj_spec(rng, spread, trial % 3 == 0)
        # tails of R are fresh; a trivial tail puts the cycle through y (on P2) or x (on C)
        return {"L": L, "pos": pos, "l1": l1, "l2": l2, "spec": spec,
                "y_at": rng.randint(1, l2 - 1), "x_pos": rng.randrange(L)}

    p = _sample(rng, draw, lambda p: p["L"] + p["l1"] + p["l2"] - 2 + p["spec"].order - 2, budget)
    b = Builder()
    cyc = b.cycle(p["L"])
    a, bb, c, d = (cyc[i] for i in p["pos"])
    P1 = b.path(a, c, p["l1"])
    P2 = b.path(bb, d, p["l2"])
    y = P2[p["y_at"]]
    x = cyc[p["x_pos"]]
    r = add_adjustable_path(b, p["spec"], y, x)
    parts = {"C": cyc, "P1": P1, "P2": P2, "R.tail1": r["tail1"], "R.cycle": r["cycle"], "R.tail2": r["tail2"]}
    params = {k: v for k, v in p.items() if k != "spec"}
    params["spec"] = _spec_dict(p["spec"])
    return Instance(b.graph(), parts, params)


def check_bridge_crossed(g, parts, params):
    cyc = parts["C"]
    L = _is_cycle(g, cyc, "C")
    _need(L % 2 == 0, "C is odd")
    e1 = _check_bridge(g, cyc, parts["P1"], "P1")
    e2 = _check_bridge(g, cyc, parts["P2"], "P2")
    _need((len(parts["P1"]) - 1) % 2 == 0, "P1 is odd")
    _need(not (set(parts["P1"]) & set(parts["P2"])), "P1, P2 not vertex-disjoint")
    _need(_interleaved(L, e1, e2), "P1, P2 not crossed")
    y = parts["R.tail1"][0]
    x = parts["R.tail2"][-1]
    _need(y in _interior(parts["P2"]), "R must start in P2 - C")
    _need(x in set(cyc), "R must end on C")
    rv = _check_adjustable(g, parts["R.tail1"], parts["R.cycle"], parts["R.tail2"], y, x, "R")
    host = set(cyc) | set(parts["P1"]) | set(parts["P2"])
    _need(rv & host == {x, y}, "R meets C + P1 + P2 outside its ends")
    _covers(g, [parts[k] for k in ("P1", "P2", "R.tail1", "R.tail2")], [cyc, parts["R.cycle"]])


def gen_bridge_adjustable(rng, budget, trial):
    spread = max(1, (budget - 9) // 6)

    def draw():
        L = _even_cycle(rng, 4, spread)
        while True:
            i1 = rng.randrange(L)
            j1 = (i1 + 2 * rng.randint(1, L // 4)) % L if L >= 4 else i1
            i2 = rng.randrange(L)
            j2 = (i2 + 2 * rng.randint(1, L // 4)) % L
            if len({i1, j1, i2, j2}) == 4:
                break
        return {"L": L, "e1": [i1, j1], "e2": [i2, j2],
                "l1": _draw_len(rng, 2, spread, None), "l2": _draw_len(rng, 2, spread, None),
                "spec": _adj_spec(rng, spread, trial % 3 == 0)}

    def order(p):
        return p["L"] + p["l1"] + p["l2"] - 2 + p["spec"].order - 2

    p = _sample(rng, draw, order, budget)
    b = Builder()
    cyc = b.cycle(p["L"])
    P1 = b.path(cyc[p["e1"][0]], cyc[p["e1"][1]], p["l1"])
    P2 = b.path(cyc[p["e2"][0]], cyc[p["e2"][1]], p["l2"])
    x = P1[rng.randint(1, p["l1"] - 1)]
    y = P2[rng.randint(1, p["l2"] - 1)]
    spec = p["spec"]
    r = add_adjustable_path(b, spec, x, y)
    parts = {"C": cyc, "P1": P1, "P2": P2, "R.tail1": r["tail1"], "R.cycle": r["cycle"], "R.tail2": r["tail2"]}
    params = {k: v for k, v in p.items() if k != "spec"}
    params["spec"] = _spec_dict(spec)
    return Instance(b.graph(), parts, params)


def check_bridge_adjustable(g, parts, params):
    cyc = parts["C"]
    L = _is_cycle(g, cyc, "C")
    _need(L % 2 == 0, "C is odd")
    e1 = _check_bridge(g, cyc, parts["P1"], "P1")
    e2 = _check_bridge(g, cyc, parts["P2"], "P2")
    _need(not (set(parts["P1"]) & set(parts["P2"])), "P1, P2 not vertex-disjoint")
    _need(_span(L, *e1) % 2 == 0 and _span(L, *e2) % 2 == 0, "a bridge has odd span")
    x = parts["R.tail1"][0]
    y = parts["R.tail2"][-1]
    _need(x in _interior(parts["P1"]) and y in _interior(parts["P2"]), "R must join P1 - C to P2 - C")
    rv = _check_adjustable(g, parts["R.tail1"], parts["R.cycle"], parts["R.tail2"], x, y, "R")
    _need(not (rv & set(cyc)), "R meets C")
    host = set(parts["P1"]) | set(parts["P2"])
    _need(rv & host == {x, y}, "R meets the bridges outside its ends")
    _covers(g, [parts[k] for k in ("P1", "P2", "R.tail1", "R.tail2")], [cyc, parts["R.cycle"]])


# Lemma: two odd cycles --------------------------------------------------------------


def _odd_pair(rng, spread):
    L1 = _draw_len(rng, 3, spread, 1)
    while True:
        L2 = _draw_len(rng, 3, spread, 1)
        if L2 % 4 == L1 % 4:
            return L1, L2


def gen_two_cycle(variant: int):
    def gen(rng, budget, trial):
        spread = max(2, (budget - 6) // 3)
        if variant == 2:
            def draw():
                L1, L2 = _odd_pair(rng, spread)
                return {"L1": L1, "L2": L2, "i": rng.randrange(1, L1), "j": rng.randrange(1, L2),
                        "len": _draw_len(rng, 2, spread, 0)}

            p = _sample(rng, draw, lambda p: p["L1"] + p["L2"] - 1 + p["len"] - 1, budget)
            b = Builder()
            C1 = b.cycle(p["L1"])
            C2 = b.cycle(p["L2"], through=C1[0])
            P1 = b.path(C1[p["i"]], C2[p["j"]], p["len"])
            return Instance(b.graph(), {"C1": C1, "C2": C2, "P1": P1}, p)
        k = 2 if variant == 1 else 3

        def draw():
            L1, L2 = _odd_pair(rng, spread)
            lens = [_draw_len(rng, 1, spread, None) for _ in range(k)]
            if variant == 1 and sum(lens) % 2:
                lens[1] += 1
            return {"L1": L1, "L2": L2, "xs": rng.sample(range(L1), k), "ys": rng.sample(range(L2), k), "lens": lens}

        p = _sample(rng, draw, lambda p: p["L1"] + p["L2"] + sum(l - 1 for l in p["lens"]), budget)
        b = Builder()
        C1 = b.cycle(p["L1"])
        C2 = b.cycle(p["L2"])
        parts = {"C1": C1, "C2": C2}
        for t in range(k):
            parts[f"P{t + 1}"] = b.path(C1[p["xs"][t]], C2[p["ys"][t]], p["lens"][t])
        return Instance(b.graph(), parts, p)

    return gen


def check_two_cycle(variant: int):
    def check(g, parts, params):
        C1, C2 = parts["C1"], parts["C2"]
        L1 = _is_cycle(g, C1, "C1")
        L2 = _is_cycle(g, C2, "C2")
        _need(L1 % 2 == 1 and L2 % 2 == 1, "cycles must be odd")
        _need(L1 % 4 == L2 % 4, "cycle lengths differ mod 4")
        s1, s2 = set(C1), set(C2)
        names = [k for k in ("P1", "P2", "P3") if k in parts]
        if variant == 2:
            _need(len(s1 & s2) == 1, "C1, C2 must share exactly one vertex")
            (x,) = s1 & s2
        else:
            _need(not (s1 & s2), "C1, C2 must be vertex-disjoint")
        for k in names:
            seq = parts[k]
            _is_path(g, seq, k)
            _need(seq[0] in s1 and seq[-1] in s2, f"{k} must run from C1 to C2")
            _need(not (_interior(seq) & (s1 | s2)), f"{k} interior meets a cycle")
            if variant == 2:
                _need(x not in seq, f"{k} passes through the shared vertex")
                _need(seq[0] not in s2 and seq[-1] not in s1, f"{k} must join C1 - x to C2 - x")
        for a, b in combinations(names, 2):
            _need(not (set(parts[a]) & set(parts[b])), f"{a}, {b} not vertex-disjoint")
        if variant == 1:
            _need((len(parts["P1"]) + len(parts["P2"])) % 2 == 0, "|P1| + |P2| is odd")
        if variant == 2:
            _need((len(parts["P1"]) - 1) % 2 == 0, "P1 is odd")
        _covers(g, [parts[k] for k in names], [C1, C2])

    return check


# Lemma: three odd cycles through one vertex ---------------------------------------------


def _odd_triple(rng, spread):
    L1 = _draw_len(rng, 3, spread, 1)
    out = [L1]
    while len(out) < 3:
        L = _draw_len(rng, 3, spread, 1)
        if L % 4 == L1 % 4:
            out.append(L)
    return out


def _flower(b: Builder, Ls: list[int]) -> list[list[int]]:
    x = b.vertex()
    return [b.cycle(L, through=x) for L in Ls]


def gen_three_cycle_bridge(rng, budget, trial):
    spread = max(2, (budget - 7) // 5)

    def draw():
        Ls = _odd_triple(rng, spread)
        ends = []
        for i in range(3):
            # P_i from C_i - x to C_{i+1} - x
            ends.append([rng.randrange(1, Ls[i]), rng.randrange(1, Ls[(i + 1) % 3])])
        if trial % 4 == 0:
            # corner z_i = y_i on one cycle
            ends[1][0] = ends[0][1]
        return {"Ls": Ls, "ends": ends, "lens": [_draw_len(rng, 1, spread, None) for _ in range(3)]}

    p = _sample(rng, draw, lambda p: sum(p["Ls"]) - 2 + sum(l - 1 for l in p["lens"]), budget)
    b = Builder()
    cycles = _flower(b, p["Ls"])
    parts = {f"C{i + 1}": c for i, c in enumerate(cycles)}
    for i in range(3):
        a = cycles[i][p["ends"][i][0]]
        c = cycles[(i + 1) % 3][p["ends"][i][1]]
        parts[f"P{i + 1}"] = b.path(a, c, p["lens"][i])
    return Instance(b.graph(), parts, p)


def _check_flower(g, parts) -> tuple[list[set[int]], int]:
    cs = [parts[f"C{i}"] for i in (1, 2, 3)]
    Ls = [_is_cycle(g, c, f"C{i + 1}") for i, c in enumerate(cs)]
    _need(all(L % 2 == 1 for L in Ls), "cycles must be odd")
    _need(len({L % 4 for L in Ls}) == 1, "cycle lengths differ mod 4")
    sets = [set(c) for c in cs]
    common = sets[0] & sets[1]
    _need(len(common) == 1 and sets[0] & sets[2] == common and sets[1] & sets[2] == common,
          "cycles must pairwise meet in exactly one common vertex")
    (x,) = common
    return sets, x


def check_three_cycle_bridge(g, parts, params):
    sets, x = _check_flower(g, parts)
    ps = [parts[f"P{i}"] for i in (1, 2, 3)]
    for i, seq in enumerate(ps):
        _is_path(g, seq, f"P{i + 1}")
        _need(seq[0] in sets[i] - {x} and seq[-1] in sets[(i + 1) % 3] - {x}, f"P{i + 1} must join C{i + 1} to C{(i + 1) % 3 + 1}")
        _need(not (_interior(seq) & (sets[0] | sets[1] | sets[2])), f"P{i + 1} interior meets a cycle")
        _need(not (set(seq) & sets[(i + 2) % 3]), f"P{i + 1} meets C{(i + 2) % 3 + 1}")
    for a, b in combinations(ps, 2):
        _need(not (_interior(a) & set(b)) and not (_interior(b) & set(a)), "connectors not internally disjoint")
    _covers(g, ps, [parts[f"C{i}"] for i in (1, 2, 3)])


def gen_three_cycle_path(rng, budget, trial):
    spread = max(2, (budget - 8) // 5)

    def draw():
        Ls = _odd_triple(rng, spread)
        return {"Ls": Ls, "ends": [rng.randrange(1, L) for L in Ls], "lens": [_draw_len(rng, 1, spread, None) for _ in range(3)]}

    p = _sample(rng, draw, lambda p: sum(p["Ls"]) - 2 + 1 + sum(l - 1 for l in p["lens"]), budget)
    b = Builder()
    cycles = _flower(b, p["Ls"])
    y = b.vertex()
    parts = {f"C{i + 1}": c for i, c in enumerate(cycles)}
    for i in range(3):
        parts[f"P{i + 1}"] = b.path(y, cycles[i][p["ends"][i]], p["lens"][i])
    return Instance(b.graph(), parts, p)


def check_three_cycle_path(g, parts, params):
    sets, x = _check_flower(g, parts)
    ps = [parts[f"P{i}"] for i in (1, 2, 3)]
    y = ps[0][0]
    allc = sets[0] | sets[1] | sets[2]
    _need(y not in allc, "y lies on a cycle")
    for i, seq in enumerate(ps):
        _is_path(g, seq, f"P{i + 1}")
        _need(seq[0] == y and seq[-1] in sets[i] - {x}, f"P{i + 1} must run from y to C{i + 1} - x")
        _need(not (_interior(seq) & allc), f"P{i + 1} interior meets a cycle")
    for a, b in combinations(ps, 2):
        _need(not (_interior(a) & set(b)) and not (_interior(b) & set(a)), "paths not internally disjoint")
    _covers(g, ps, [parts[f"C{i}"] for i in (1, 2, 3)])


# Lemma: switching ------------------------------------------------------------------------


def gen_switching(rng, budget, trial):
    n_max = min(budget, 14)
    for _ in range(200):
        n = rng.randint(4, n_max)
        x, y = 0, 1
        split = rng.randint(3, n - 1)
        side_a, side_b = list(range(2, split)), list(range(split, n))
        if not side_a or not side_b:
            continue
        prob = rng.choice([0.15, 0.25, 0.4])
        edges = set()
        for side in (side_a, side_b):
            vs = [x, y] + side
            # random spanning tree keeps each side attached to the cut
            order = vs[:]
            rng.shuffle(order)
            for i in range(1, len(order)):
                u, v = order[i], order[rng.randrange(i)]
                edges.add((min(u, v), max(u, v)))
            for u, v in combinations(vs, 2):
                if rng.random() < prob:
                    edges.add((u, v))
        g = Graph.from_edges(n, sorted(edges))
        comps = g.components(((1 << n) - 1) & ~0b11)
        if len(comps) < 2:
            continue
        H = rng.choice(comps)
        return Instance(g, {"cut": [x, y], "H": H}, {"n": n, "prob": prob})
    raise Infeasible("could not build a graph with a 2-cut")


def check_switching(g, parts, params):
    x, y = parts["cut"]
    H = set(parts["H"])
    rest = [v for v in range(g.n) if v not in (x, y)]
    # independent BFS over g - {x, y}
    seen, comps = set(), []
    for s in rest:
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in (x, y) and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    _need(len(comps) >= 2, "{x, y} is not a cut")
    _need(H in comps, "H is not a component of g - {x, y}")


# dispatch ----------------------------------------------------------------------------------

GENERATORS = {
    "Theta_N_H": (gen_theta_n_h, check_theta_n_h),
    "Planar": (gen_planar, check_planar),
    "Bridge1": (gen_bridge1, check_bridge1),
    "Bridge2": (gen_bridge2, check_bridge2),
    "Bridge3": (gen_bridge3, check_bridge3),
    "BridgeCrossed": (gen_bridge_crossed, check_bridge_crossed),
    "BridgeAdjustable": (gen_bridge_adjustable, check_bridge_adjustable),
    "TwoCycle1": (gen_two_cycle(1), check_two_cycle(1)),
    "TwoCycle2": (gen_two_cycle(2), check_two_cycle(2)),
    "TwoCycle3": (gen_two_cycle(3), check_two_cycle(3)),
    "ThreeCycleBridge": (gen_three_cycle_bridge, check_three_cycle_bridge),
    "ThreeCyclePath": (gen_three_cycle_path, check_three_cycle_path),
    "Switching": (gen_switching, check_switching),
}


def conclusion_holds(lemma: str, inst: Instance) -> tuple[bool, dict]:
    g = inst.graph
    if lemma == "Switching":
        x, y = inst.parts["cut"]
        h = switch_at_2cut(g, x, y, inst.parts["H"])
        back = switch_at_2cut(h, x, y, inst.parts["H"])
        before = has_cycle_mod(g) is not None
        after = has_cycle_mod(h) is not None
        info = {"edges_before": g.m, "edges_after": h.m, "cycle_before": before, "cycle_after": after,
                "involution": back == g}
        return g.m == h.m and before == after and back == g, info
    w = has_cycle_mod(g, ZERO_MOD_FOUR)
    if w is None:
        return False, {"witness": None}
    return w.validate(g, ZERO_MOD_FOUR), {"witness": list(w.vertices)}


def generate(lemma: str, seed: int, trial: int, budget: int) -> Instance:
    """The instance of one trial; raises :class:`Infeasible` if none fits the budget."""
    gen, _ = GENERATORS[lemma]
    rng = trial_rng(lemma, seed, trial)
    # a draw that would need a parallel edge is redrawn from the same stream
    for _ in range(MAX_REDRAWS):
        try:
            return gen(rng, budget, trial)
        except GadgetError:
            continue
    raise Infeasible("every draw needed a parallel edge")


def run_trial(lemma: str, seed: int, trial: int, budget: int) -> dict:
    """One trial; returns a small record with status in {ok, fail, bad_hypothesis, skipped}."""
    _, check = GENERATORS[lemma]
    try:
        inst = generate(lemma, seed, trial, budget)
    except Infeasible as exc:
        return {"status": "skipped", "reason": str(exc)}
    record = {
        "lemma": lemma,
        "seed": seed,
        "trial": trial,
        "size_budget": budget,
        "graph6": to_graph6(inst.graph),
        "parts": inst.parts,
        "params": inst.params,
    }
    try:
        check(inst.graph, inst.parts, inst.params)
    except HypothesisViolation as exc:
        return {"status": "bad_hypothesis", "reason": str(exc), "record": record}
    ok, info = conclusion_holds(lemma, inst)
    return {"status": "ok" if ok else "fail", "record": record, "info": info}


def _run_batch(args):
    lemma, seed, trials, budget = args
    return [run_trial(lemma, seed, t, budget) for t in trials]


def bipartite_maxima(ns=BIPARTITE_RANGE) -> dict[int, int]:
    """Exhaustive maximum edge count of bipartite graphs with no (0 mod 4)-cycle."""
    from .extremal_search import generate_levels

    out = {}
    for n in ns:
        levels, _ = generate_levels(n, ZERO_MOD_FOUR, bipartite=True)
        out[n] = len(levels) - 1
    return out


def verify(lemma: str, cfg: TrialConfig | None = None) -> LemmaReport:
    if lemma not in LEMMA_IDS:
        raise KeyError(f"unknown lemma {lemma!r}")
    cfg = cfg or TrialConfig()
    t0 = time.perf_counter()
    if lemma == "BipartiteBound":
        maxima = bipartite_maxima()
        bad = [n for n, m in maxima.items() if m > 3 * (n - 2) // 2]
        rep = LemmaReport(lemma, cfg.seed, len(maxima), cfg.size_budget, failures=len(bad))
        rep.details = {
            "maxima": {str(n): m for n, m in maxima.items()},
            "bounds": {str(n): 3 * (n - 2) // 2 for n in maxima},
            "attained": [n for n, m in maxima.items() if m == 3 * (n - 2) // 2],
        }
        if bad:
            rep.first_counterexample = {"lemma": lemma, "n": bad[0], "max_edges": maxima[bad[0]]}
        rep.elapsed = time.perf_counter() - t0
        return rep

    trials = list(range(cfg.trials))
    if cfg.workers > 1:
        chunks = [trials[i :: cfg.workers] for i in range(cfg.workers)]
        with ProcessPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(_run_batch, [(lemma, cfg.seed, c, cfg.size_budget) for c in chunks]))
        by_trial = {}
        for c, res in zip(chunks, parts):
            by_trial.update(zip(c, res))
        results = [by_trial[t] for t in trials]
    else:
        results = _run_batch((lemma, cfg.seed, trials, cfg.size_budget))

    rep = LemmaReport(lemma, cfg.seed, cfg.trials, cfg.size_budget)
    for r in results:
        if r["status"] == "skipped":
            rep.skipped += 1
        elif r["status"] == "bad_hypothesis":
            rep.hypothesis_failures += 1
        elif r["status"] == "fail":
            rep.failures += 1
        if r["status"] in ("fail", "bad_hypothesis") and rep.first_counterexample is None:
            rep.first_counterexample = {**r["record"], "status": r["status"], "reason": r.get("reason")}
    rep.trials_run = cfg.trials - rep.skipped
    rep.elapsed = time.perf_counter() - t0
    return rep


# replay ----------------------------------------------------------------------------------------


def replay(record: dict | str) -> dict:
    """Re-run one stored instance and dump every cycle with its residue."""
    if isinstance(record, str):
        record = json.loads(record)
    try:
        lemma = record["lemma"]
        g = from_graph6(record["graph6"])
        parts = {k: list(v) for k, v in record.get("parts", {}).items()}
        params = record.get("params", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed counterexample record: {exc}") from None
    if lemma not in GENERATORS:
        raise ValueError(f"record names an unknown or non-replayable lemma {lemma!r}")
    _, check = GENERATORS[lemma]
    try:
        check(g, parts, params)
        hyp = "hypothesis holds"
    except (HypothesisViolation, KeyError, IndexError) as exc:
        hyp = f"hypothesis violated: {exc}"
    ok, info = conclusion_holds(lemma, Instance(g, parts, params))
    cycles = enumerate_cycles(g)
    return {
        "lemma": lemma,
        "graph6": record["graph6"],
        "n": g.n,
        "m": g.m,
        "hypothesis": hyp,
        "conclusion": "conclusion holds" if ok else "conclusion FAILS",
        "info": info,
        "cycles": [{"vertices": list(c.vertices), "length": c.length, "mod4": c.length % 4} for c in cycles],
    }


def format_trace(trace: dict) -> str:
    lines = [
        f"lemma {trace['lemma']}  graph6 {trace['graph6']}  n={trace['n']} m={trace['m']}",
        trace["hypothesis"],
        trace["conclusion"],
    ]
    if trace["info"].get("witness"):
        lines.append("witness: " + " ".join(map(str, trace["info"]["witness"])))
    lines.append(f"{len(trace['cycles'])} cycles:")
    for c in trace["cycles"]:
        lines.append(f"  len {c['length']:3d}  mod4 {c['mod4']}  " + " ".join(map(str, c["vertices"])))
    return "\n".join(lines) + "\n"
