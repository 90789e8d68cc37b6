"""Canonical labelling by colour refinement plus individualisation.

The search tree is explored completely except for subtrees that an already
discovered automorphism (fixing the current prefix pointwise) maps onto an
explored sibling. Leaves are compared by their permuted adjacency rows and
the lexicographically largest one wins, so the result never depends on the
input labelling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph_core import Graph, to_graph6


@dataclass(frozen=True)
class CanonicalForm:
    bytes: bytes

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.bytes < other.bytes

    def __str__(self) -> str:
        return self.bytes.decode("ascii")


@dataclass(frozen=True)
class CanonicalLabeling:
    form: CanonicalForm
    labeling: tuple[int, ...]  # vertex v of the input gets label labeling[v]
    generators: tuple[tuple[int, ...], ...]  # automorphisms found, as vertex maps
    graph: Graph  # the input relabelled canonically


def _refine(nbrs: list[list[int]], colors: list[int]) -> list[int]:
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in nbrs[v]))) for v in range(len(nbrs))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncol:
            return colors
        ncol = len(rank)


def _orbit_root(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def _orbits(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))
    for gamma in gens:
        for v in range(n):
            a, b = _orbit_root(parent, v), _orbit_root(parent, gamma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [_orbit_root(parent, v) for v in range(n)]


def canonical_labeling(g: Graph) -> CanonicalLabeling:
    n = g.n
    if n == 0:
        return CanonicalLabeling(CanonicalForm(to_graph6(g).encode()), (), (), g)
    nbrs = [g.neighbors(v) for v in range(n)]
    gens: list[tuple[int, ...]] = []
    best_cert: tuple[int, ...] | None = None
    best_colors: list[int] | None = None
    first_cert: tuple[int, ...] | None = None
    first_colors: list[int] | None = None

    def certificate(colors: list[int]) -> tuple[int, ...]:
        order = [0] * n
        for v, c in enumerate(colors):
            order[c] = v
        rows = []
        for v in order:
            row = 0
            for w in nbrs[v]:
                row |= 1 << colors[w]
            rows.append(row)
        return tuple(rows)

    def automorphism(a: list[int], b: list[int]) -> tuple[int, ...]:
        # map the vertex at position c in leaf a to the vertex at position c in leaf b
        inv_b = [0] * n
        for v, c in enumerate(b):
            inv_b[c] = v
        return tuple(inv_b[a[v]] for v in range(n))

    def visit(colors: list[int], prefix: tuple[int, ...]) -> None:
        nonlocal best_cert, best_colors, first_cert, first_colors
        colors = _refine(nbrs, colors)
        ncells = len(set(colors))
        if ncells == n:
            cert = certificate(colors)
            if first_cert is None:
                first_cert, first_colors = cert, colors
                best_cert, best_colors = cert, colors
                return
            if cert == first_cert:
                gens.append(automorphism(first_colors, colors))
                return
            if cert == best_cert:
                gens.append(automorphism(best_colors, colors))
                return
            if cert > best_cert:
                best_cert, best_colors = cert, colors
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if tried:
                stab = [gm for gm in gens if all(gm[p] == p for p in prefix)]
                if stab:
                    orb = _orbits(n, stab)
                    if any(orb[u] == orb[v] for u in tried):
                        continue
            child = [2 * c + 1 for c in colors]
            child[v] = 2 * target
            visit(child, prefix + (v,))
            tried.append(v)

    visit(g.degrees(), ())
    assert best_colors is not None
    labeling = tuple(best_colors)
    canon = Graph(n, list(best_cert))
    return CanonicalLabeling(CanonicalForm(to_graph6(canon).encode()), labeling, tuple(gens), canon)


def canonical_form(g: Graph) -> CanonicalForm:
    """Isomorphism-complete invariant: equal forms exactly for isomorphic graphs."""
    return canonical_labeling(g).form


def canonical_graph(g: Graph) -> Graph:
    return canonical_labeling(g).graph


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and a.m == b.m and canonical_form(a) == canonical_form(b)


def vertex_orbits(n: int, generators: tuple[tuple[int, ...], ...]) -> list[int]:
    """Orbit representative (smallest member) of each vertex under the generated group."""
    return _orbits(n, list(generators))


def edge_orbit_representatives(
    pairs: list[tuple[int, int]], generators: tuple[tuple[int, ...], ...]
) -> list[tuple[int, int]]:
    """One pair per orbit of the generated group acting on unordered pairs.

    ``pairs`` must be closed under the group action (e.g. all non-edges).
    The smallest pair of each orbit is returned, in sorted order.
    """
    index = {p: i for i, p in enumerate(sorted(pairs))}
    keys = sorted(pairs)
    parent = list(range(len(keys)))
    for gamma in generators:
        for i, (u, v) in enumerate(keys):
            a, b = gamma[u], gamma[v]
            j = index[(a, b) if a < b else (b, a)]
            ri, rj = _orbit_root(parent, i), _orbit_root(parent, j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [keys[i] for i in range(len(keys)) if _orbit_root(parent, i) == i]
