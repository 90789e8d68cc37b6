"""Builders for theta graphs, adjustable paths, necklaces, K4 subdivisions,
the terminal shapes T1/T2, the fixed extremal blocks L8/L13 and the chained
extremal family G_n, plus bridge geometry on a host cycle and switching at a
2-cut.

Builders return a :class:`Gadget`: the graph, its named terminal vertices,
and the vertex sequences of the paths and cycles it was assembled from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph_core import Graph, GraphError, complete_graph, iter_bits


class GadgetError(ValueError):
    pass


@dataclass
class Gadget:
    graph: Graph
    terminals: dict[str, int] = field(default_factory=dict)
    parts: dict[str, list[int]] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> int:
        return self.terminals[name]


class Builder:
    """Incremental construction of a simple graph from paths and cycles."""

    def __init__(self, n: int = 0):
        self.n = n
        self.edges: set[tuple[int, int]] = set()

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        if u == v:
            raise GadgetError(f"self-loop at {u}")
        e = (u, v) if u < v else (v, u)
        if e in self.edges:
            raise GadgetError(f"parallel edge {e}")
        self.edges.add(e)

    def path(self, a: int, b: int, length: int) -> list[int]:
        """New path of ``length`` edges from ``a`` to ``b`` with fresh interior."""
        if length < 1:
            raise GadgetError("path length must be >= 1")
        seq = [a] + [self.vertex() for _ in range(length - 1)] + [b]
        for u, v in zip(seq, seq[1:]):
            self.edge(u, v)
        return seq

    def path_from(self, a: int, length: int) -> list[int]:
        """New path of ``length`` edges from ``a`` ending at a fresh vertex (length 0 allowed)."""
        seq = [a] + [self.vertex() for _ in range(length)]
        for u, v in zip(seq, seq[1:]):
            self.edge(u, v)
        return seq

    def cycle(self, length: int, through: int | None = None) -> list[int]:
        if length < 3:
            raise GadgetError("cycle length must be >= 3")
        first = self.vertex() if through is None else through
        seq = [first] + [self.vertex() for _ in range(length - 1)]
        for i in range(length):
            self.edge(seq[i], seq[(i + 1) % length])
        return seq

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, sorted(self.edges))


def splice(cyc: Sequence[int], i: int, j: int) -> list[int]:
    """Vertices of the cycle from position ``i`` forward to position ``j``."""
    L = len(cyc)
    return [cyc[(i + t) % L] for t in range((j - i) % L + 1)]


# theta graphs -------------------------------------------------------------


@dataclass(frozen=True)
class ThetaSpec:
    l1: int
    l2: int
    l3: int

    def __post_init__(self):
        ls = (self.l1, self.l2, self.l3)
        if min(ls) < 1:
            raise GadgetError("theta path lengths must be >= 1")
        if ls.count(1) > 1:
            raise GadgetError("at most one theta path may have length 1")

    @property
    def all_even(self) -> bool:
        return all(l % 2 == 0 for l in (self.l1, self.l2, self.l3))


def build_theta(spec: ThetaSpec) -> Gadget:
    b = Builder(2)
    x, y = 0, 1
    paths = [b.path(x, y, l) for l in (spec.l1, spec.l2, spec.l3)]
    return Gadget(
        b.graph(),
        {"x": x, "y": y},
        {"P1": paths[0], "P2": paths[1], "P3": paths[2]},
        {"lengths": [spec.l1, spec.l2, spec.l3], "all_even": spec.all_even},
    )


# adjustable paths and necklaces -------------------------------------------


@dataclass(frozen=True)
class AdjustablePathSpec:
    tail1: int
    cycle_len: int
    tail2: int
    attach_gap: int

    def __post_init__(self):
        if self.cycle_len < 3 or self.cycle_len % 2 == 0:
            raise GadgetError(f"adjustable path needs an odd cycle, got length {self.cycle_len}")
        if self.tail1 < 0 or self.tail2 < 0:
            raise GadgetError("tail lengths must be >= 0")
        # gap 0 makes the two tails share a vertex: only one end-to-end path survives
        if not 0 < self.attach_gap < self.cycle_len:
            raise GadgetError(f"attach_gap must be in 1..{self.cycle_len - 1}, got {self.attach_gap}")

    @property
    def path_lengths(self) -> tuple[int, int]:
        """The two end-to-end path lengths (via the short and the long arc)."""
        base = self.tail1 + self.tail2
        return base + self.attach_gap, base + self.cycle_len - self.attach_gap

    @property
    def even_length(self) -> int:
        return next(l for l in self.path_lengths if l % 2 == 0)

    @property
    def odd_length(self) -> int:
        return next(l for l in self.path_lengths if l % 2 == 1)

    @property
    def order(self) -> int:
        return self.tail1 + self.cycle_len + self.tail2


def add_adjustable_path(b: Builder, spec: AdjustablePathSpec, x: int, y: int | None = None) -> dict[str, list[int]]:
    """Attach an adjustable path to builder ``b`` starting at ``x``.

    If ``y`` is given the far end is glued onto it, otherwise a fresh vertex
    is created. Returns the parts ``tail1`` (x to cycle), ``cycle`` (starting
    at the first attachment) and ``tail2`` (cycle to y).
    """
    c0 = x if spec.tail1 == 0 else b.vertex()
    if spec.tail2 == 0:
        c1 = b.vertex() if y is None else y
    else:
        c1 = b.vertex()
    cyc = []
    for i in range(spec.cycle_len):
        cyc.append(c0 if i == 0 else c1 if i == spec.attach_gap else b.vertex())
    for i in range(spec.cycle_len):
        b.edge(cyc[i], cyc[(i + 1) % spec.cycle_len])
    tail1 = [x] if spec.tail1 == 0 else b.path(x, c0, spec.tail1)
    if spec.tail2 == 0:
        tail2 = [c1]
    elif y is None:
        tail2 = b.path_from(c1, spec.tail2)
    else:
        tail2 = b.path(c1, y, spec.tail2)
    return {"tail1": tail1, "cycle": cyc, "tail2": tail2}


def build_adjustable_path(spec: AdjustablePathSpec) -> Gadget:
    b = Builder(1)
    parts = add_adjustable_path(b, spec, 0)
    y = parts["tail2"][-1]
    return Gadget(
        b.graph(),
        {"x": 0, "y": y},
        parts,
        {"even_length": spec.even_length, "odd_length": spec.odd_length},
    )


def build_necklace(r1: AdjustablePathSpec, r2: AdjustablePathSpec, r3: AdjustablePathSpec) -> Gadget:
    """Three adjustable paths chained x1 -> x2 -> x3 -> x1."""
    b = Builder(1)
    x1 = 0
    p1 = add_adjustable_path(b, r1, x1)
    x2 = p1["tail2"][-1]
    p2 = add_adjustable_path(b, r2, x2)
    x3 = p2["tail2"][-1]
    p3 = add_adjustable_path(b, r3, x3, x1)
    parts: dict[str, list[int]] = {}
    for i, p in enumerate((p1, p2, p3), start=1):
        for key, seq in p.items():
            parts[f"R{i}.{key}"] = seq
    return Gadget(b.graph(), {"x1": x1, "x2": x2, "x3": x3}, parts, {"specs": [r1, r2, r3]})


# K4 subdivisions ------------------------------------------------------------

K4_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
K4_TRIANGLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
K4_SQUARES = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))


@dataclass(frozen=True)
class K4SubdivisionSpec:
    """Path lengths for the K4 edges in the order 12, 13, 14, 23, 24, 34."""

    lengths: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.lengths) != 6 or min(self.lengths) < 1:
            raise GadgetError("need six path lengths, each >= 1")

    def length(self, i: int, j: int) -> int:
        return self.lengths[K4_EDGES.index((min(i, j), max(i, j)))]


def classify_k4_lengths(lengths: Sequence[int]) -> set[str]:
    """Which of H3o, H3e, H4o, H4e the subdivision realises (any k-cycle qualifies)."""
    par = {e: lengths[i] % 2 for i, e in enumerate(K4_EDGES)}

    def cyc_edges(cyc):
        return [tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))) for i in range(len(cyc))]

    found = set()
    for tag, cycles in (("H3", K4_TRIANGLES), ("H4", K4_SQUARES)):
        for cyc in cycles:
            ps = {par[e] for e in cyc_edges(cyc)}
            if ps == {1}:
                found.add(tag + "o")
            if ps == {0}:
                found.add(tag + "e")
    return found


def build_k4_subdivision(spec: K4SubdivisionSpec) -> Gadget:
    b = Builder(4)
    parts = {}
    for (i, j), l in zip(K4_EDGES, spec.lengths):
        parts[f"P{i + 1}{j + 1}"] = b.path(i, j, l)
    return Gadget(
        b.graph(),
        {f"x{i + 1}": i for i in range(4)},
        parts,
        {"patterns": sorted(classify_k4_lengths(spec.lengths))},
    )


def build_subdivision(base: Graph, lengths: Sequence[int]) -> Gadget:
    """Subdivide each edge of ``base`` (in ``base.edges()`` order) into a path."""
    edges = base.edges()
    if len(lengths) != len(edges):
        raise GadgetError("one length per base edge required")
    b = Builder(base.n)
    parts = {f"P{u}_{v}": b.path(u, v, l) for (u, v), l in zip(edges, lengths)}
    return Gadget(b.graph(), {f"b{v}": v for v in range(base.n)}, parts, {"lengths": list(lengths)})


# terminal shapes and fixed extremal blocks ------------------------------------


def build_T1() -> Gadget:
    return Gadget(complete_graph(3), {"x": 0, "y": 1}, {"C": [0, 1, 2]})


def build_T2() -> Gadget:
    """6-cycle x,u1,u2,y,u3,u4 with the chord u1-u4 joining the neighbours of x."""
    x, u1, u2, y, u3, u4 = range(6)
    cyc = [x, u1, u2, y, u3, u4]
    edges = [(cyc[i], cyc[(i + 1) % 6]) for i in range(6)] + [(u1, u4)]
    return Gadget(Graph.from_edges(6, edges), {"x": x, "y": y}, {"C": cyc, "chord": [u1, u4]})


L8_LABELS = "abcdefgh"
L8_EDGES = ("ab", "ac", "ae", "cd", "ce", "dg", "bg", "ef", "fg", "eh", "fh")


def build_L8() -> Gadget:
    """The 8-vertex, 11-edge extremal block; vertices a..h are 0..7."""
    idx = {c: i for i, c in enumerate(L8_LABELS)}
    g = Graph.from_edges(8, [(idx[e[0]], idx[e[1]]) for e in L8_EDGES])
    return Gadget(g, {c: i for c, i in idx.items()})


def build_L13() -> Gadget:
    """Two copies of T2 joined through a centre vertex.

    Vertices 0..5 form T2(x1, y1), 6..11 form T2(x2, y2), 12 is the centre c.
    Connectors: y1-y2, y1-c, c-x2, x1-c, c-y2.
    """
    t2 = build_T2()
    b = Builder(13)
    for u, v in t2.graph.edges():
        b.edge(u, v)
        b.edge(u + 6, v + 6)
    x1, y1 = t2["x"], t2["y"]
    x2, y2 = x1 + 6, y1 + 6
    c = 12
    for u, v in ((y1, y2), (y1, c), (c, x2), (x1, c), (c, y2)):
        b.edge(u, v)
    return Gadget(b.graph(), {"x1": x1, "y1": y1, "x2": x2, "y2": y2, "c": c})


# extremal family --------------------------------------------------------------


@dataclass(frozen=True)
class GnDecomposition:
    n: int
    q1: int
    r1: int
    q2: int
    r2: int
    q3: int
    r3: int

    @classmethod
    def of(cls, n: int) -> "GnDecomposition":
        if n < 2:
            raise GadgetError("G_n needs n >= 2")
        q1, r1 = divmod(n - 1, 12)
        q2, r2 = divmod(r1, 7)
        q3, r3 = divmod(r2, 2)
        return cls(n, q1, r1, q2, r2, q3, r3)

    @property
    def block_count(self) -> int:
        return self.q1 + self.q2 + self.q3 + self.r3

    @property
    def edge_count(self) -> int:
        return 19 * self.q1 + 11 * self.q2 + 3 * self.q3 + self.r3


def build_Gn(n: int) -> Gadget:
    """Blocks L13 (q1 times), L8 (q2), K3 (q3), K2 (r3) glued in a chain.

    Each block enters through its lowest local label and the next block is
    attached at its highest local label.
    """
    dec = GnDecomposition.of(n)
    shapes = (
        [build_L13().graph] * dec.q1
        + [build_L8().graph] * dec.q2
        + [complete_graph(3)] * dec.q3
        + [complete_graph(2)] * dec.r3
    )
    b = Builder(1)
    anchor = 0
    blocks = []
    for shape in shapes:
        local = {0: anchor}
        for v in range(1, shape.n):
            local[v] = b.vertex()
        for u, v in shape.edges():
            b.edge(local[u], local[v])
        blocks.append(sorted(local.values()))
        anchor = local[shape.n - 1]
    g = b.graph()
    if g.n != n:
        raise AssertionError(f"G_n construction produced {g.n} vertices for n={n}")
    return Gadget(g, {}, {f"block{i}": blk for i, blk in enumerate(blocks)}, {"decomposition": dec})


# bridges on a cycle ---------------------------------------------------------


def _check_bridge(cycle: Sequence[int], path: Sequence[int], g: Graph | None = None) -> tuple[int, int]:
    pos = {v: i for i, v in enumerate(cycle)}
    if len(path) < 2:
        raise GadgetError("a bridge must be nontrivial")
    if len(set(path)) != len(path):
        raise GadgetError("bridge path repeats a vertex")
    a, b = path[0], path[-1]
    if a not in pos or b not in pos:
        raise GadgetError("bridge endpoints must lie on the cycle")
    if any(v in pos for v in path[1:-1]):
        raise GadgetError("bridge interior must avoid the cycle")
    if len(path) == 2 and (pos[a] - pos[b]) % len(cycle) in (1, len(cycle) - 1):
        raise GadgetError("a chord cannot be a cycle edge")
    if g is not None:
        if any(not g.has_edge(u, v) for u, v in zip(path, path[1:])):
            raise GadgetError("bridge is not a path of the host graph")
        if any(not g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))):
            raise GadgetError("cycle is not a cycle of the host graph")
    return pos[a], pos[b]


def bridge_span(cycle: Sequence[int], path: Sequence[int], g: Graph | None = None) -> int:
    i, j = _check_bridge(cycle, path, g)
    d = (j - i) % len(cycle)
    return min(d, len(cycle) - d)


def bridges_crossed(cycle: Sequence[int], p1: Sequence[int], p2: Sequence[int], g: Graph | None = None) -> bool:
    """Vertex-disjoint bridges whose endpoints interleave around the cycle."""
    i1, j1 = _check_bridge(cycle, p1, g)
    i2, j2 = _check_bridge(cycle, p2, g)
    if set(p1) & set(p2):
        return False
    L = len(cycle)
    lo, span = i1, (j1 - i1) % L
    inside = [0 < (k - lo) % L < span for k in (i2, j2)]
    return inside[0] != inside[1]


# switching --------------------------------------------------------------------


def switch_at_2cut(g: Graph, x: int, y: int, side: Sequence[int]) -> Graph:
    """Exchange the attachments of ``side`` to ``x`` and to ``y``.

    ``side`` must be the vertex set of one component of ``g - {x, y}``, and
    ``g - {x, y}`` must be disconnected.
    """
    if x == y or not (0 <= x < g.n and 0 <= y < g.n):
        raise GraphError("x and y must be distinct vertices")
    full = ((1 << g.n) - 1) & ~(1 << x) & ~(1 << y)
    H = 0
    for v in side:
        H |= 1 << v
    if not H or H & ~full:
        raise GraphError("side must be a nonempty set avoiding x and y")
    start = (H & -H).bit_length() - 1
    if g.component_mask(start, full) != H:
        raise GraphError("side is not a full component of g - {x, y}")
    if H == full:
        raise GraphError("{x, y} is not a cut of g")
    bits = list(g.bits)
    to_x = bits[x] & H
    to_y = bits[y] & H
    bits[x] = (bits[x] & ~H) | to_y
    bits[y] = (bits[y] & ~H) | to_x
    for z in iter_bits(H):
        zx, zy = bits[z] >> x & 1, bits[z] >> y & 1
        bits[z] &= ~(1 << x) & ~(1 << y)
        bits[z] |= (zy << x) | (zx << y)
    return Graph(g.n, bits)


def components_after_removal(g: Graph, x: int, y: int) -> list[list[int]]:
    full = ((1 << g.n) - 1) & ~(1 << x) & ~(1 << y)
    return g.components(full)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))
