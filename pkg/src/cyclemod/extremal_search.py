"""Exact ex(n, C_{0 mod 4}) by isomorph-free edge augmentation.

Graphs are grown one edge at a time over a fixed vertex set, level by level
(level m holds one canonical representative per isomorphism class of
m-edge graphs with no forbidden cycle). Because the property is closed under
taking subgraphs, every such graph on m+1 edges arises from one on m edges,
so the levels are complete. Children are generated only from one non-edge
per orbit of the automorphisms found by the canonical labeller, and a
child is kept only if the new edge closes no forbidden cycle.

Optional pruning discards a graph whose edge count plus the number of still
addable non-edges is below a target: addable sets only shrink as edges are
added, so such a graph can never reach the target.
"""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import __version__
from .canon import canonical_labeling, edge_orbit_representatives
from .gadgets import build_Gn
from .graph_core import Graph, from_graph6, to_graph6
from .modcycle import ZERO_MOD_FOUR, ResidueClass, creates_cycle_mod, has_cycle_mod

log = logging.getLogger(__name__)

FEASIBLE_MAX_N = 11
DEFAULT_BUDGET = 5_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FormulaBound:
    n: int
    value: int


def formula_bound(n: int) -> FormulaBound:
    """floor(19/12 (n-1)) in exact integer arithmetic."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return FormulaBound(n, 19 * (n - 1) // 12)


@dataclass
class SearchConfig:
    n: int
    mode: str = "exact"  # "exact" or "refute"
    target_edges: int | None = None
    workers: int = 1
    node_budget: int = DEFAULT_BUDGET
    rc: ResidueClass = ZERO_MOD_FOUR
    prune: bool = True
    bipartite: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.mode not in ("exact", "refute"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "refute" and (self.target_edges is None or self.target_edges < 1):
            raise ValueError("refute mode needs target_edges >= 1")
        if self.workers < 1 or self.node_budget < 1:
            raise ValueError("workers and node_budget must be positive")


@dataclass
class SearchResult:
    n: int
    max_edges: int
    extremal_graphs: list[str]
    nodes_explored: int
    elapsed: float
    complete: bool = True
    level_counts: list[int] = field(default_factory=list)

    def to_json(self, timing: bool = False) -> str:
        d = asdict(self)
        elapsed = d.pop("elapsed")
        if timing:
            d["millis"] = int(round(elapsed * 1000))
        return json.dumps(d, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SearchResult":
        d = json.loads(text)
        d["elapsed"] = d.pop("millis", 0) / 1000
        return cls(**d)


@dataclass
class RefuteResult:
    n: int
    target_edges: int
    exists: bool
    witness: str | None
    nodes_explored: int
    elapsed: float
    complete: bool = True

    def to_json(self, timing: bool = False) -> str:
        d = asdict(self)
        elapsed = d.pop("elapsed")
        if timing:
            d["millis"] = int(round(elapsed * 1000))
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


# core expansion -----------------------------------------------------------


def _addable(g: Graph, rc: ResidueClass | None, bipartite: bool) -> list[tuple[int, int]]:
    """Non-edges whose addition keeps the graph rc-free (every non-edge when rc is None)."""
    out = []
    side = _two_colouring(g) if bipartite else None
    for u, v in g.non_edges():
        if side is not None and not _keeps_bipartite(g, side, u, v):
            continue
        if rc is None or not creates_cycle_mod(g, u, v, rc):
            out.append((u, v))
    return out


def _two_colouring(g: Graph) -> list[int]:
    side = [-1] * g.n
    for comp in g.components():
        side[comp[0]] = 0
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
    return side


def _keeps_bipartite(g: Graph, side: list[int], u: int, v: int) -> bool:
    if g.component_mask(u) >> v & 1:
        return side[u] != side[v]
    return True


def _expand(args) -> tuple[dict[bytes, str], int]:
    """Children of a batch of parents: {canonical form: graph6 of canonical graph}."""
    parents, rc, bipartite, target = args
    children: dict[bytes, str] = {}
    pruned = 0
    for g6 in parents:
        g = from_graph6(g6)
        addable = _addable(g, rc, bipartite)
        if target is not None and g.m + len(addable) < target:
            pruned += 1
            continue
        gens = canonical_labeling(g).generators
        reps = set(edge_orbit_representatives(g.non_edges(), gens))
        for u, v in addable:
            if (u, v) not in reps:
                continue
            lab = canonical_labeling(g.add_edge(u, v))
            children.setdefault(lab.form.bytes, to_graph6(lab.graph))
    return children, pruned


def _chunks(items: list[str], k: int) -> list[list[str]]:
    size = max(1, -(-len(items) // k))
    return [items[i : i + size] for i in range(0, len(items), size)]


def generate_levels(
    n: int,
    rc: ResidueClass | None = ZERO_MOD_FOUR,
    *,
    target: int | None = None,
    stop_at: int | None = None,
    workers: int = 1,
    node_budget: int = DEFAULT_BUDGET,
    bipartite: bool = False,
    on_level: Callable[[int, int], None] | None = None,
) -> tuple[list[list[str]], int]:
    """All levels of canonical (rc-free) graphs on ``n`` vertices.

    With ``rc=None`` nothing is forbidden and the levels list every
    isomorphism class. Returns the list of levels (each a sorted list of graph6 strings of
    canonical graphs) and the node count. With ``target`` set, graphs that
    cannot reach ``target`` edges are dropped before expansion (they still
    count as visited nodes). ``stop_at`` ends the search once a level with
    that many edges is nonempty.
    """
    empty = canonical_labeling(Graph.empty(n))
    levels = [[to_graph6(empty.graph)]]
    nodes = 1
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while levels[-1]:
            m = len(levels) - 1
            if on_level:
                on_level(m, len(levels[-1]))
            if stop_at is not None and m >= stop_at:
                break
            batches = [(chunk, rc, bipartite, target) for chunk in _chunks(levels[-1], workers * 4)]
            results = pool.map(_expand, batches) if pool else map(_expand, batches)
            merged: dict[bytes, str] = {}
            for children, _ in results:
                for key, g6 in children.items():
                    merged.setdefault(key, g6)
            nxt = [merged[k] for k in sorted(merged)]
            nodes += len(nxt)
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"node budget {node_budget} exhausted at level {m + 1}")
            levels.append(nxt)
    finally:
        if pool:
            pool.shutdown()
    if not levels[-1]:
        levels.pop()
    return levels, nodes


def construction_lower_bound(n: int, rc: ResidueClass = ZERO_MOD_FOUR) -> int:
    """Edge count of the verified G_n construction (0 when it does not apply)."""
    if n < 2 or (rc.ell, rc.k) != (0, 4):
        return 0
    g = build_Gn(n).graph
    if has_cycle_mod(g, rc) is not None:
        raise AssertionError(f"G_{n} contains a forbidden cycle")
    return g.m


def ex_exact(cfg: SearchConfig) -> SearchResult:
    if cfg.n > FEASIBLE_MAX_N:
        raise ValueError(f"n={cfg.n} is above the feasibility ceiling {FEASIBLE_MAX_N}")
    t0 = time.perf_counter()
    target = construction_lower_bound(cfg.n, cfg.rc) if cfg.prune and not cfg.bipartite else None
    try:
        levels, nodes = generate_levels(
            cfg.n, cfg.rc, target=target or None, workers=cfg.workers,
            node_budget=cfg.node_budget, bipartite=cfg.bipartite,
        )
    except SearchBudgetExceeded as exc:
        log.warning("%s", exc)
        return SearchResult(cfg.n, -1, [], cfg.node_budget, time.perf_counter() - t0, complete=False)
    top = levels[-1]
    return SearchResult(
        n=cfg.n,
        max_edges=len(levels) - 1,
        extremal_graphs=list(top),
        nodes_explored=nodes,
        elapsed=time.perf_counter() - t0,
        level_counts=[len(lv) for lv in levels],
    )


def refute_above_bound(cfg: SearchConfig) -> RefuteResult:
    """Is there an n-vertex graph with ``target_edges`` edges and no forbidden cycle?"""
    if cfg.mode != "refute":
        raise ValueError("refute_above_bound needs mode='refute'")
    if cfg.n > FEASIBLE_MAX_N:
        raise ValueError(f"n={cfg.n} is above the feasibility ceiling {FEASIBLE_MAX_N}")
    t0 = time.perf_counter()
    t = cfg.target_edges
    if t > cfg.n * (cfg.n - 1) // 2:
        return RefuteResult(cfg.n, t, False, None, 0, time.perf_counter() - t0)
    try:
        levels, nodes = generate_levels(
            cfg.n, cfg.rc, target=t if cfg.prune else None, stop_at=t,
            workers=cfg.workers, node_budget=cfg.node_budget,
        )
    except SearchBudgetExceeded as exc:
        log.warning("%s", exc)
        return RefuteResult(cfg.n, t, False, None, cfg.node_budget, time.perf_counter() - t0, complete=False)
    exists = len(levels) - 1 >= t
    witness = levels[t][0] if exists else None
    return RefuteResult(cfg.n, t, exists, witness, nodes, time.perf_counter() - t0)


# independent brute force ---------------------------------------------------------


def _has_c4(bits: list[int], n: int) -> bool:
    for a, b in combinations(range(n), 2):
        if (bits[a] & bits[b]).bit_count() >= 2:
            return True
    return False


def ex_c4_crosscheck(n: int) -> int:
    """Max edges of an n-vertex graph with no 4-cycle, by include/exclude branch and bound.

    Uses only a common-neighbour test, independent of the cycle walker and
    the canonical search.
    """
    if n > 7:
        raise ValueError("ex_c4_crosscheck is limited to n <= 7")
    pairs = list(combinations(range(n), 2))
    best = 0
    bits = [0] * n

    def rec(i: int, m: int) -> None:
        nonlocal best
        if m > best:
            best = m
        if i == len(pairs) or m + len(pairs) - i <= best:
            return
        u, v = pairs[i]
        bits[u] |= 1 << v
        bits[v] |= 1 << u
        if not _has_c4(bits, n):
            rec(i + 1, m + 1)
        bits[u] &= ~(1 << v)
        bits[v] &= ~(1 << u)
        rec(i + 1, m)

    rec(0, 0)
    return best


# caching -----------------------------------------------------------------------


def cache_path(cache_dir: str | Path, n: int, mode: str, target: int | None = None) -> Path:
    tag = mode if target is None else f"{mode}{target}"
    return Path(cache_dir) / f"ex_n{n}_{tag}_v{__version__}.json"


def cached_ex_exact(cfg: SearchConfig, cache_dir: str | Path | None) -> SearchResult:
    if cache_dir is None:
        return ex_exact(cfg)
    path = cache_path(cache_dir, cfg.n, "exact")
    if path.exists():
        return SearchResult.from_json(path.read_text())
    res = ex_exact(cfg)
    if res.complete:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(res.to_json())
    return res


def load_cached_value(cache_dir: str | Path | None, n: int) -> int | None:
    if cache_dir is None:
        return None
    path = cache_path(cache_dir, n, "exact")
    if not path.exists():
        return None
    return SearchResult.from_json(path.read_text()).max_edges
