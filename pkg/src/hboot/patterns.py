"""Bootstrap rules and the closing-edge computation.

A non-edge ``e`` of ``G`` is *closing* for a rule ``H`` when ``G + e`` holds a
copy of ``H`` through ``e``.  For a single cycle ``C_k`` that is exactly a
simple path of ``k - 1`` edges between the endpoints of ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from hboot import kernels
from hboot.graph import Graph, GraphError, disjoint_union, from_edges, graph6_decode, graph6_encode, _iter_bits

Pair = tuple[int, int]

GENERIC_VERTEX_BOUND = 12
MAX_PATH_LENGTH = 12
COUNT_SIZE_GUARD = 64


class PatternError(ValueError):
    pass


class SizeGuardError(RuntimeError):
    pass


def _cycle_graph(k: int) -> Graph:
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


@dataclass(frozen=True)
class Cycle:
    k: int

    def __post_init__(self):
        if self.k < 3:
            raise PatternError("cycle length must be at least 3")

    @property
    def spec(self) -> str:
        return f"cycle:{self.k}"

    def as_graph(self) -> Graph:
        return _cycle_graph(self.k)


@dataclass(frozen=True)
class CycleUnion:
    lengths: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.lengths)
        if not ks:
            raise PatternError("a cycle union needs at least one cycle")
        if any(k < 3 for k in ks):
            raise PatternError("cycle lengths must be at least 3")
        object.__setattr__(self, "lengths", tuple(sorted(ks, reverse=True)))

    @property
    def spec(self) -> str:
        return "union:" + ",".join(map(str, self.lengths))

    def as_graph(self) -> Graph:
        return disjoint_union(*(_cycle_graph(k) for k in self.lengths))


@dataclass(frozen=True, eq=False)
class Generic:
    H: Graph
    vertex_bound: int = GENERIC_VERTEX_BOUND

    def __post_init__(self):
        if self.H.n > self.vertex_bound:
            raise PatternError(f"pattern has {self.H.n} vertices, bound is {self.vertex_bound}")
        if self.H.n == 0 or any(d == 0 for d in self.H.degrees()):
            raise PatternError("generic pattern must be non-empty without isolated vertices")

    def __eq__(self, other):
        return isinstance(other, Generic) and self.H == other.H

    def __hash__(self):
        return hash(self.H)

    @property
    def spec(self) -> str:
        return "generic:" + graph6_encode(self.H)

    def as_graph(self) -> Graph:
        return self.H


Pattern = Cycle | CycleUnion | Generic


def parse_rule(text: str) -> Pattern:
    """Parse ``cycle:5``, ``union:5,3`` or ``generic:<graph6>``."""
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "cycle":
            return Cycle(int(arg))
        if kind == "union":
            return CycleUnion(tuple(int(a) for a in arg.split(",")))
        if kind == "generic":
            return Generic(graph6_decode(arg))
    except (ValueError, GraphError) as exc:
        raise PatternError(f"bad rule {text!r}: {exc}") from exc
    raise PatternError(f"unknown rule kind {kind!r} (expected cycle, union or generic)")


# -- exact-length paths ----------------------------------------------------------


def exists_path_of_exact_length(G: Graph, u: int, v: int, L: int, max_length: int = MAX_PATH_LENGTH) -> bool:
    """Is there a simple ``u``-``v`` path with exactly ``L`` edges in ``G``?"""
    G._check(u)
    G._check(v)
    if u == v:
        raise GraphError("endpoints must differ")
    if not 1 <= L <= max_length:
        raise PatternError(f"path length {L} outside supported range 1..{max_length}")
    return kernels.path_exists(G.bits, u, v, L)


def _mask_words(n: int, mask: int) -> np.ndarray:
    W = max(1, (n + 63) // 64)
    return np.frombuffer(mask.to_bytes(8 * W, "little"), dtype="<u8").astype(np.uint64)


def simple_paths(rows: list[int], u: int, v: int, L: int, avoid: int = 0) -> Iterator[int]:
    """Vertex masks of the simple ``u``-``v`` paths with ``L`` edges avoiding ``avoid``."""
    if avoid >> u & 1 or avoid >> v & 1 or u == v:
        return

    def rec(w: int, r: int, used: int):
        if r == 1:
            if rows[w] >> v & 1:
                yield used | (1 << v)
            return
        for x in _iter_bits(rows[w] & ~used & ~(1 << v)):
            yield from rec(x, r - 1, used | (1 << x))

    yield from rec(u, L, avoid | (1 << u))


def _find_cycle(rows: list[int], k: int, avoid: int) -> Iterator[int]:
    """Vertex masks of ``k``-cycles in ``G - avoid``, each rooted at its least vertex."""
    n = len(rows)
    for root in range(n):
        if avoid >> root & 1:
            continue
        allowed = ~avoid & ~((2 << root) - 1)
        for first in _iter_bits(rows[root] & allowed):
            # walk k-2 more steps ending at a vertex adjacent to root and > first
            def rec(w: int, r: int, used: int):
                if r == 0:
                    if rows[w] >> root & 1 and w > first:
                        yield used
                    return
                for x in _iter_bits(rows[w] & allowed & ~used):
                    yield from rec(x, r - 1, used | (1 << x))

            yield from rec(first, k - 2, (1 << root) | (1 << first))


class _PackingOracle:
    """Existence of vertex-disjoint cycles of prescribed lengths avoiding a mask."""

    def __init__(self, rows: list[int]):
        self.rows = rows
        self.memo: dict[tuple[int, tuple[int, ...]], int | None] = {}
        self.found: dict[tuple[int, ...], list[int]] = {}

    def packing(self, lengths: tuple[int, ...], avoid: int) -> int | None:
        if not lengths:
            return 0
        for mask in self.found.get(lengths, ()):
            if not mask & avoid:
                return mask
        key = (avoid, lengths)
        if key in self.memo:
            return self.memo[key]
        result = None
        head, rest = lengths[0], lengths[1:]
        for cyc in _find_cycle(self.rows, head, avoid):
            sub = self.packing(rest, avoid | cyc)
            if sub is not None:
                result = cyc | sub
                break
        self.memo[key] = result
        if result is not None:
            self.found.setdefault(lengths, []).append(result)
        return result


# -- closing edges ----------------------------------------------------------------


def _union_closing(G: Graph, H: CycleUnion) -> np.ndarray:
    rows = G.rows()
    oracle = _PackingOracle(rows)
    ks = H.lengths
    distinct = sorted(set(ks), reverse=True)
    hits = set()
    for kj in distinct:
        rest = list(ks)
        rest.remove(kj)
        rest_t = tuple(rest)
        for u, v in kernels.closing_pairs_path(G.bits, kj - 1).tolist():
            if (u, v) in hits:
                continue
            if not rest_t:
                hits.add((u, v))
                continue
            for pmask in simple_paths(rows, u, v, kj - 1):
                if oracle.packing(rest_t, pmask) is not None:
                    hits.add((u, v))
                    break
    if not hits:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(sorted(hits), dtype=np.int64)


def _embeds_through(Hg: Graph, rows: list[int], a: int, b: int, u: int, v: int) -> bool:
    """Injective map of ``Hg - ab`` into ``rows`` with ``a -> u`` and ``b -> v``."""
    order = _search_order(Hg, (a, b))
    hrows = Hg.rows()
    assign = {a: u, b: v}

    def rec(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        h = order[idx]
        cand = ~used
        for nb in _iter_bits(hrows[h]):
            if nb in assign:
                if (h, nb) in ((a, b), (b, a)):
                    continue
                cand &= rows[assign[nb]]
        cand &= (1 << len(rows)) - 1
        for x in _iter_bits(cand):
            assign[h] = x
            if rec(idx + 1, used | (1 << x)):
                del assign[h]
                return True
            del assign[h]
        return False

    return rec(0, (1 << u) | (1 << v))


@lru_cache(maxsize=256)
def _search_order(Hg: Graph, seeds: tuple[int, ...]) -> list[int]:
    """Remaining pattern vertices, each chosen with most already-placed neighbours."""
    hrows = Hg.rows()
    placed = 0
    for s in seeds:
        placed |= 1 << s
    order = []
    remaining = [h for h in range(Hg.n) if not placed >> h & 1]
    while remaining:
        best = max(remaining, key=lambda h: ((hrows[h] & placed).bit_count(), hrows[h].bit_count(), -h))
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def _generic_closing(G: Graph, H: Generic) -> np.ndarray:
    Hg = H.H
    if Hg.n > G.n:
        return np.empty((0, 2), dtype=np.int64)
    rows = G.rows()
    full = (1 << G.n) - 1
    hedges = Hg.edges()
    hits = []
    for u in range(G.n):
        for v in _iter_bits(full & ~rows[u] & ~((2 << u) - 1)):
            if any(_embeds_through(Hg, rows, a, b, u, v) or _embeds_through(Hg, rows, b, a, u, v) for a, b in hedges):
                hits.append((u, v))
    if not hits:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(hits, dtype=np.int64)


def closing_array(G: Graph, H: Pattern) -> np.ndarray:
    """Closing non-edges as an ``(m, 2)`` array, rows ascending lexicographically."""
    if isinstance(H, Cycle):
        if G.n < H.k:
            return np.empty((0, 2), dtype=np.int64)
        return kernels.closing_pairs_path(G.bits, H.k - 1)
    if isinstance(H, CycleUnion):
        if G.n < sum(H.lengths):
            return np.empty((0, 2), dtype=np.int64)
        return _union_closing(G, H)
    if isinstance(H, Generic):
        return _generic_closing(G, H)
    raise PatternError(f"unsupported pattern {H!r}")


def closing_edges(G: Graph, H: Pattern) -> list[Pair]:
    """Non-edges of ``G`` whose addition creates a new copy of ``H``."""
    return [tuple(p) for p in closing_array(G, H).tolist()]


# -- copy counting ---------------------------------------------------------------


def count_embeddings(Hg: Graph, G: Graph) -> int:
    """Number of injective homomorphisms ``Hg -> G`` (not necessarily induced)."""
    if Hg.n > G.n:
        return 0
    if Hg.n == 0:
        return 1
    rows = G.rows()
    hrows = Hg.rows()
    order = _search_order(Hg, ())
    pos = {h: i for i, h in enumerate(order)}
    back = [[nb for nb in _iter_bits(hrows[h]) if pos[nb] < pos[h]] for h in order]
    full = (1 << G.n) - 1
    image = [0] * Hg.n

    def rec(idx: int, used: int) -> int:
        if idx == len(order):
            return 1
        h = order[idx]
        cand = full & ~used
        for nb in back[idx]:
            cand &= rows[image[nb]]
        total = 0
        for x in _iter_bits(cand):
            image[h] = x
            total += rec(idx + 1, used | (1 << x))
        return total

    return rec(0, 0)


def automorphism_count(Hg: Graph) -> int:
    return count_embeddings(Hg, Hg)


def count_copies(G: Graph, H: Pattern, size_guard: int = COUNT_SIZE_GUARD) -> int:
    """Number of subgraphs of ``G`` isomorphic to ``H``."""
    if G.n > size_guard:
        raise SizeGuardError(f"host has {G.n} vertices, guard is {size_guard}")
    Hg = H.as_graph()
    emb = count_embeddings(Hg, G)
    if emb == 0:
        return 0
    return emb // _aut_cached(H)


_AUT_CACHE: dict = {}


def _aut_cached(H: Pattern) -> int:
    if H not in _AUT_CACHE:
        _AUT_CACHE[H] = automorphism_count(H.as_graph())
    return _AUT_CACHE[H]
