"""Simple cycles classified by length modulo ``k``.

Every simple cycle lives inside one biconnected block, so all searches run
block by block. Inside a block, cycles are generated by a depth-first walk
from each start vertex ``s`` over vertices larger than ``s``. A cycle is
reported only when its second vertex is smaller than its last, so each one
appears exactly once, already normalised (smallest vertex first, smaller
neighbour second).

A "no" answer is only ever given after the walk finished. If the walk
exceeds the cycle cap, :class:`CycleCapExceeded` is raised instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .graph_core import Graph, GraphError, block_decomposition, iter_bits

DEFAULT_CAP = 10**7


class CycleCapExceeded(RuntimeError):
    """Enumeration stopped at the cap; ``partial`` must not back a "no" answer."""

    def __init__(self, cap: int, partial: list["CycleWitness"] | None = None):
        super().__init__(f"cycle enumeration exceeded cap of {cap}")
        self.cap = cap
        self.partial = partial or []


@dataclass(frozen=True)
class ResidueClass:
    ell: int
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"modulus must be >= 2, got {self.k}")
        if not 0 <= self.ell < self.k:
            raise ValueError(f"residue must satisfy 0 <= ell < k, got ({self.ell}, {self.k})")

    def matches(self, length: int) -> bool:
        return length % self.k == self.ell


ZERO_MOD_FOUR = ResidueClass(0, 4)


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def validate(self, g: Graph, rc: ResidueClass | None = None) -> bool:
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        if any(not 0 <= v < g.n for v in vs):
            return False
        if any(not g.has_edge(a, b) for a, b in self.edges()):
            return False
        return rc is None or rc.matches(len(vs))

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


@dataclass
class ResidueHistogram:
    k: int
    counts: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict:
        return {"k": self.k, "counts": list(self.counts), "total": self.total}


def normalize_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    vs = list(vertices)
    i = vs.index(min(vs))
    vs = vs[i:] + vs[:i]
    if len(vs) > 2 and vs[-1] < vs[1]:
        vs = [vs[0]] + vs[1:][::-1]
    return tuple(vs)


def _block_masks(g: Graph) -> list[int]:
    masks = []
    for block in block_decomposition(g).blocks:
        if len(block) < 3:
            continue
        mask = 0
        for v in block:
            mask |= 1 << v
        masks.append(mask)
    return masks


def _walk_block(
    bits: Sequence[int],
    block: int,
    visit: Callable[[list[int]], bool],
    max_len: int | None = None,
) -> bool:
    """Feed every cycle of the block to ``visit``; stop early if it returns True."""
    for s in iter_bits(block):
        allowed = block & ~((1 << (s + 1)) - 1)
        path = [s]
        on_path = 1 << s
        # each frame: remaining candidate neighbours of path[-1]
        frames = [bits[s] & allowed]
        while frames:
            cand = frames[-1]
            if not cand:
                frames.pop()
                v = path.pop()
                on_path &= ~(1 << v)
                continue
            low = cand & -cand
            frames[-1] = cand ^ low
            w = low.bit_length() - 1
            path.append(w)
            on_path |= low
            if len(path) >= 3 and bits[w] >> s & 1 and path[1] < w:
                if visit(path):
                    return True
            if max_len is None or len(path) < max_len:
                frames.append(bits[w] & allowed & ~on_path)
            else:
                frames.append(0)
    return False


def iter_cycles(g: Graph, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each simple cycle once, normalised; order is deterministic."""
    found: list[tuple[int, ...]] = []

    def collect(path):
        found.append(tuple(path))
        return False

    for block in _block_masks(g):
        found.clear()
        _walk_block(g.bits, block, collect, max_len)
        yield from found


def enumerate_cycles(g: Graph, cap: int = DEFAULT_CAP) -> list[CycleWitness]:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    out: list[CycleWitness] = []

    def collect(path):
        if len(out) >= cap:
            raise CycleCapExceeded(cap, sorted(out, key=lambda c: c.vertices))
        out.append(CycleWitness(tuple(path)))
        return False

    for block in _block_masks(g):
        _walk_block(g.bits, block, collect)
    out.sort(key=lambda c: c.vertices)
    return out


def _first_cycle(g: Graph, rc: ResidueClass, cap: int, max_len: int | None = None) -> CycleWitness | None:
    seen = 0
    hit: list[tuple[int, ...]] = []

    def check(path):
        nonlocal seen
        seen += 1
        if seen > cap:
            raise CycleCapExceeded(cap)
        if rc.matches(len(path)):
            hit.append(tuple(path))
            return True
        return False

    for block in _block_masks(g):
        if _walk_block(g.bits, block, check, max_len):
            return CycleWitness(hit[0])
    return None


def has_cycle_mod(
    g: Graph, rc: ResidueClass = ZERO_MOD_FOUR, cap: int = DEFAULT_CAP, fast_path: bool = False
) -> CycleWitness | None:
    """A cycle of length ``ell (mod k)`` if one exists, else ``None`` (certified).

    With ``fast_path`` on and ``rc == (0, 4)``, graphs with more than ``3n - 6``
    edges are known to be non-planar and therefore to contain such a cycle;
    the witness is then found by an iteratively deepened length-bounded walk.
    """
    if fast_path and (rc.ell, rc.k) == (0, 4) and g.n >= 3 and g.m > 3 * g.n - 6:
        for bound in range(4, g.n + 1, 4):
            hit = _first_cycle(g, rc, cap, max_len=bound)
            if hit is not None:
                return hit
    return _first_cycle(g, rc, cap)


def residue_histogram(g: Graph, k: int, cap: int = DEFAULT_CAP) -> ResidueHistogram:
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    counts = [0] * k
    for c in enumerate_cycles(g, cap):
        counts[c.length % k] += 1
    return ResidueHistogram(k, counts)


def shortest_cycle_mod(g: Graph, rc: ResidueClass, cap: int = DEFAULT_CAP) -> CycleWitness | None:
    best = None
    for c in enumerate_cycles(g, cap):
        if rc.matches(c.length) and (best is None or (c.length, c.vertices) < (best.length, best.vertices)):
            best = c
    return best


def _block_of_edge(g: Graph, u: int, v: int) -> int:
    for block in block_decomposition(g).blocks:
        if u in block and v in block:
            mask = 0
            for w in block:
                mask |= 1 << w
            return mask
    raise GraphError(f"edge ({u}, {v}) not in any block")


def paths_between(
    bits: Sequence[int], u: int, v: int, allowed: int, visit: Callable[[list[int]], bool]
) -> bool:
    """Walk all simple u-v paths inside ``allowed``; stop when ``visit`` returns True."""
    path = [u]
    on_path = 1 << u
    frames = [bits[u] & allowed]
    while frames:
        cand = frames[-1]
        if not cand:
            frames.pop()
            w = path.pop()
            on_path &= ~(1 << w)
            continue
        low = cand & -cand
        frames[-1] = cand ^ low
        w = low.bit_length() - 1
        if w == v:
            path.append(w)
            if visit(path):
                return True
            path.pop()
            continue
        path.append(w)
        on_path |= low
        frames.append(bits[w] & allowed & ~on_path)
    return False


def has_cycle_mod_through_edge(
    g: Graph, u: int, v: int, rc: ResidueClass = ZERO_MOD_FOUR, cap: int = DEFAULT_CAP
) -> CycleWitness | None:
    """A cycle through edge ``uv`` with length ``ell (mod k)``, or ``None``.

    Enumerates simple u-v paths in ``g - uv`` (restricted to the block of
    ``uv``) and tests ``len(path) + 1``.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not present")
    block = _block_of_edge(g, u, v)
    bits = list(g.bits)
    bits[u] &= ~(1 << v)
    bits[v] &= ~(1 << u)
    seen = 0
    hit: list[tuple[int, ...]] = []

    def check(path):
        nonlocal seen
        seen += 1
        if seen > cap:
            raise CycleCapExceeded(cap)
        if len(path) >= 3 and rc.matches(len(path)):
            hit.append(tuple(path))
            return True
        return False

    if paths_between(bits, u, v, block, check):
        return CycleWitness(normalize_cycle(hit[0]))
    return None


def creates_cycle_mod(g: Graph, u: int, v: int, rc: ResidueClass = ZERO_MOD_FOUR) -> bool:
    """Would adding the (absent) edge ``uv`` close a cycle of the residue class?

    Search-engine shortcut equivalent to ``has_cycle_mod_through_edge(g + uv)``.
    """
    bits = g.bits
    comp = g.component_mask(u)
    if not comp >> v & 1:
        return False
    return paths_between(bits, u, v, comp, lambda path: len(path) >= 3 and rc.matches(len(path)))
