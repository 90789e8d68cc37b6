"""Simple undirected graphs on vertices ``0..n-1``.

Adjacency is stored as one integer bitmask per vertex, so edge tests are a
single AND. Graphs are immutable; ``add_edge`` returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64


class GraphError(ValueError):
    """Invalid graph input (bad endpoint, self-loop, malformed text)."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    __slots__ = ("n", "_bits", "_m")

    def __init__(self, n: int, bits: Sequence[int]):
        if n < 0 or n > MAX_ORDER:
            raise GraphError(f"order must be in 0..{MAX_ORDER}, got {n}")
        if len(bits) != n:
            raise GraphError("need one adjacency mask per vertex")
        self.n = n
        self._bits = tuple(bits)
        self._m = sum(b.bit_count() for b in self._bits) // 2

    # construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        bits = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    # basic queries --------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    @property
    def bits(self) -> tuple[int, ...]:
        return self._bits

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(iter_bits(b)) for b in self._bits)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._bits[v]))

    def degree(self, v: int) -> int:
        return self._bits[v].bit_count()

    def degrees(self) -> list[int]:
        return [b.bit_count() for b in self._bits]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._bits[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self._bits[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self._bits[u] >> v & 1]

    # derived graphs -------------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError(f"self-loop at {u}")
        bits = list(self._bits)
        bits[u] |= 1 << v
        bits[v] |= 1 << u
        return Graph(self.n, bits)

    def remove_edge(self, u: int, v: int) -> "Graph":
        bits = list(self._bits)
        bits[u] &= ~(1 << v)
        bits[v] &= ~(1 << u)
        return Graph(self.n, bits)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled in increasing order; also returns the old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(keep), edges), keep

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        """``g - U`` with the removed vertices kept as isolated ids (labels stay stable)."""
        mask = 0
        for v in vertices:
            mask |= 1 << v
        bits = [0 if mask >> v & 1 else b & ~mask for v, b in enumerate(self._bits)]
        return Graph(self.n, bits)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        edges = self.edges() + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph.from_edges(self.n + other.n, edges)

    # connectivity ---------------------------------------------------------

    def component_mask(self, start: int, allowed: int | None = None) -> int:
        """Bitmask of the component of ``start`` inside the vertex mask ``allowed``."""
        if allowed is None:
            allowed = (1 << self.n) - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self._bits[v]
            nxt &= allowed & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def components(self, allowed: int | None = None) -> list[list[int]]:
        if allowed is None:
            allowed = (1 << self.n) - 1
        rest = allowed
        out = []
        while rest:
            start = (rest & -rest).bit_length() - 1
            comp = self.component_mask(start, allowed)
            out.append(list(iter_bits(comp)))
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or self.component_mask(0) == (1 << self.n) - 1

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in iter_bits(self._bits[u]):
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return False
        return True

    # dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self.n, self._bits))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def rho(g: Graph, U: Iterable[int]) -> int:
    """Number of edges with at least one endpoint in ``U``."""
    mask = 0
    for v in U:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
        mask |= 1 << v
    inside = sum((g.bits[v] & mask).bit_count() for v in iter_bits(mask)) // 2
    leaving = sum((g.bits[v] & ~mask).bit_count() for v in iter_bits(mask))
    return inside + leaving


# blocks and cuts --------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]

    def block_edges(self, g: Graph) -> list[list[tuple[int, int]]]:
        out = []
        for block in self.blocks:
            inside = set(block)
            out.append([(u, v) for u, v in g.edges() if u in inside and v in inside])
        return out


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components (bridges count as 2-vertex blocks) and cut vertices.

    Isolated vertices belong to no block. Blocks are returned as sorted vertex
    tuples, ordered by their smallest vertex (ties broken lexicographically).
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []

    for root in range(n):
        if disc[root] >= 0 or not g.bits[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # iterative DFS: (vertex, parent, iterator over neighbours)
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                verts: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    verts.update((a, b))
                    if (a, b) == (parent, u):
                        break
                blocks.append(tuple(sorted(verts)))
        if root_children >= 2:
            cuts.add(root)

    blocks.sort()
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def find_2cuts(g: Graph) -> list[tuple[int, int]]:
    """All vertex pairs ``{x, y}`` whose removal disconnects a connected graph."""
    if not g.is_connected():
        raise GraphError("find_2cuts needs a connected graph")
    full = (1 << g.n) - 1
    out = []
    for x, y in combinations(range(g.n), 2):
        rest = full & ~(1 << x) & ~(1 << y)
        if not rest:
            continue
        start = (rest & -rest).bit_length() - 1
        if g.component_mask(start, rest) != rest:
            out.append((x, y))
    return out


# graph6 ---------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError("order too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.bits[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    chunks = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        chunks.append(chr(val + 63))
    return _encode_n(g.n) + "".join(chunks)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError("graph6 contains a byte outside 63..126")
    if s[0] == "~":
        if len(s) > 1 and s[1] == "~":
            raise GraphError("graph6 orders above 258047 are not supported")
        if len(s) < 4:
            raise GraphError("truncated graph6 size header")
        n = 0
        for c in s[1:4]:
            n = n << 6 | (ord(c) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    if n > MAX_ORDER:
        raise GraphError(f"order {n} exceeds {MAX_ORDER}")
    stream = []
    for c in body:
        val = ord(c) - 63
        stream.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(stream[nbits:]):
        raise GraphError("nonzero padding bits in graph6 string")
    bits = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
            k += 1
    return Graph(n, bits)


# edge-list text ------------------------------------------------------------


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def read_graph(text: str, fmt: str = "graph6") -> Graph:
    if fmt == "graph6":
        return from_graph6(text.strip().splitlines()[0] if text.strip() else "")
    if fmt == "edgelist":
        return from_edgelist(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(g) + "\n"
    if fmt == "edgelist":
        return to_edgelist(g)
    raise GraphError(f"unknown graph format {fmt!r}")
