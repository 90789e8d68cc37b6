"""Deliberately naive reference implementations used only by the tests."""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations

import networkx as nx
from hypothesis import strategies as st

from cyclemod.graph_core import Graph


def brute_cycle_lengths(n: int, edges) -> Counter:
    """Length multiset of all simple cycles: every vertex subset, every cyclic order."""
    adj = {frozenset(e) for e in edges}
    out: Counter = Counter()
    for k in range(3, n + 1):
        for subset in combinations(range(n), k):
            first, rest = subset[0], subset[1:]
            for order in permutations(rest):
                if order[0] > order[-1]:
                    continue  # each cycle once per direction
                cyc = (first,) + order
                if all(frozenset((cyc[i], cyc[(i + 1) % k])) in adj for i in range(k)):
                    out[k] += 1
    return out


def brute_has_cycle(n: int, edges, ell: int, k: int) -> bool:
    return any(length % k == ell for length in brute_cycle_lengths(n, edges))


def has_c4_common_neighbours(g: Graph) -> bool:
    return any(len(set(g.neighbors(a)) & set(g.neighbors(b))) >= 2 for a, b in combinations(range(g.n), 2))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_cycle_set(g: Graph) -> set[frozenset]:
    """Cycles as edge sets, from networkx."""
    out = set()
    for cyc in nx.simple_cycles(to_nx(g)):
        if len(cyc) >= 3:
            out.add(frozenset(frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))))
    return out


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, max_edges: int | None = None) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)) if pairs else []
    return Graph.from_edges(n, chosen)


def _closes_forbidden(adj: list[set[int]], u: int, v: int, lengths=(3, 7)) -> bool:
    """Is there a simple u-v path whose length is in ``lengths`` (so uv would close a 4- or 8-cycle)?"""
    longest = max(lengths)
    stack = [(u, [u])]
    while stack:
        w, path = stack.pop()
        if len(path) - 1 >= longest:
            continue
        for z in adj[w]:
            if z == v:
                if len(path) in lengths:  # path edges + 1 = len(path)
                    return True
                continue
            if z not in path:
                stack.append((z, path + [z]))
    return False


def bipartite_max_bruteforce(n: int) -> int:
    """Max edges of a bipartite n-vertex graph without 4- or 8-cycles (n <= 9 only).

    Every bipartite graph sits inside some K_{a,n-a}; include/exclude each
    edge of it with a path-length test.
    """
    assert n <= 9  # longer even cycles would need a longer length list
    best = 0
    for a in range(1, n // 2 + 1):
        pairs = [(u, v) for u in range(a) for v in range(a, n)]
        adj = [set() for _ in range(n)]

        def rec(i: int, m: int) -> None:
            nonlocal best
            best = max(best, m)
            if i == len(pairs) or m + len(pairs) - i <= best:
                return
            u, v = pairs[i]
            if not _closes_forbidden(adj, u, v):
                adj[u].add(v)
                adj[v].add(u)
                rec(i + 1, m + 1)
                adj[u].discard(v)
                adj[v].discard(u)
            rec(i + 1, m)

        rec(0, 0)
    return best
