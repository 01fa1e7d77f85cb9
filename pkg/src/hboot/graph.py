"""Packed-bitset undirected graphs, traversal primitives and graph6 I/O."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

Pair = tuple[int, int]

GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    pass


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Rows are packed into a read-only ``uint64`` array of shape ``(n, W)``;
    bit ``v`` of row ``u`` is set iff ``uv`` is an edge.
    """

    __slots__ = ("n", "bits", "_rows", "_m")

    def __init__(self, n: int, bits: np.ndarray):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        bits = np.ascontiguousarray(bits, dtype=np.uint64)
        if bits.shape != (n, _words(n)):
            raise GraphError(f"bit array has shape {bits.shape}, expected {(n, _words(n))}")
        bits.setflags(write=False)
        self.n = n
        self.bits = bits
        self._rows: list[int] | None = None
        self._m: int | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros((n, _words(n)), dtype=np.uint64))

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[int]) -> "Graph":
        W = _words(n)
        buf = b"".join(int(r).to_bytes(8 * W, "little") for r in rows)
        bits = np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(n, W) if n else np.zeros((0, 1), np.uint64)
        g = cls(n, bits)
        g._rows = [int(r) for r in rows]
        return g

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise GraphError("adjacency matrix must be square")
        if np.any(np.diag(a)):
            raise GraphError("self-loop in adjacency matrix")
        if np.any(a != a.T):
            raise GraphError("adjacency matrix is not symmetric")
        return cls(n, _pack(a))

    # -- views ----------------------------------------------------------------

    def rows(self) -> list[int]:
        """Adjacency rows as Python ints (cached)."""
        if self._rows is None:
            arr = self.bits.astype("<u8", copy=False)
            self._rows = [int.from_bytes(arr[u].tobytes(), "little") for u in range(self.n)]
        return self._rows

    def matrix(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=bool)
        raw = np.unpackbits(self.bits.astype("<u8").view(np.uint8), axis=1, bitorder="little")
        return raw[:, : self.n].astype(bool)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool((int(self.bits[u, v >> 6]) >> (v & 63)) & 1)

    def neighbors(self, u: int) -> list[int]:
        self._check(u)
        return list(_iter_bits(self.rows()[u]))

    def degree(self, u: int) -> int:
        self._check(u)
        return self.rows()[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows()]

    @property
    def edge_count(self) -> int:
        if self._m is None:
            self._m = int(np.bitwise_count(self.bits).sum()) // 2
        return self._m

    def edges(self) -> list[Pair]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows()):
            out.extend((u, v) for v in _iter_bits(r >> (u + 1) << (u + 1)))
        return out

    def edge_array(self) -> np.ndarray:
        iu = np.argwhere(np.triu(self.matrix(), 1))
        return iu.astype(np.int64).reshape(-1, 2)

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    # -- derived graphs -------------------------------------------------------

    def with_edges(self, pairs) -> "Graph":
        """New graph with ``pairs`` (iterable of pairs or an ``(m, 2)`` array) added."""
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if arr.size == 0:
            return self
        _validate_pairs(self.n, arr)
        if len(arr) > 4 * self.n:
            # big batches: a dense scatter beats per-element ufunc.at
            a = self.matrix()
            a[arr[:, 0], arr[:, 1]] = True
            a[arr[:, 1], arr[:, 0]] = True
            return Graph(self.n, _pack(a))
        bits = self.bits.copy()
        for a, b in ((arr[:, 0], arr[:, 1]), (arr[:, 1], arr[:, 0])):
            np.bitwise_or.at(bits, (a, b >> 6), np.left_shift(np.uint64(1), (b & 63).astype(np.uint64)))
        return Graph(self.n, bits)

    def without_edges(self, pairs) -> "Graph":
        rows = list(self.rows())
        for u, v in pairs:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph.from_rows(self.n, rows)

    def union(self, other: "Graph") -> "Graph":
        if other.n != self.n:
            raise GraphError("union needs equal vertex counts")
        return Graph(self.n, self.bits | other.bits)

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and not np.any(self.bits & ~other.bits)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of the vertices")
        return from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = {v: i for i, v in enumerate(vertices)}
        rows = self.rows()
        edges = [(idx[u], idx[v]) for u in vertices for v in _iter_bits(rows[u]) if v in idx and u < v]
        return from_edges(len(vertices), edges)

    # -- misc -------------------------------------------------------------------

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def _pack(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    W = _words(n)
    padded = np.zeros((n, 64 * W), dtype=np.uint8)
    padded[:, :n] = a
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64).reshape(n, W)


def _validate_pairs(n: int, arr: np.ndarray) -> None:
    if arr.size == 0:
        return
    if arr.min() < 0 or arr.max() >= n:
        bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
        raise GraphError(f"endpoint out of range in pair {tuple(int(x) for x in bad)} for n={n}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise GraphError(f"self-loop at vertex {int(arr[loops][0, 0])}")


def from_edges(n: int, edges: Iterable[Pair]) -> Graph:
    """Graph on ``n`` vertices with the given edges; duplicates collapse."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    _validate_pairs(n, arr)
    return Graph.empty(n).with_edges(arr)


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph.from_rows(G.n, [full & ~r & ~(1 << u) for u, r in enumerate(G.rows())])


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; the vertices of ``graphs[i]`` follow those of ``graphs[i-1]``."""
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return from_edges(offset, edges)


# -- traversal ------------------------------------------------------------------


def _nbhd(rows: list[int], mask: int) -> int:
    acc = 0
    for x in _iter_bits(mask):
        acc |= rows[x]
    return acc


def bfs_layers(G: Graph, x: int) -> list[int]:
    """BFS distance from ``x`` to every vertex; ``-1`` where unreachable."""
    G._check(x)
    rows = G.rows()
    dist = [-1] * G.n
    seen = frontier = 1 << x
    d = 0
    while frontier:
        for v in _iter_bits(frontier):
            dist[v] = d
        nxt = _nbhd(rows, frontier) & ~seen
        seen |= nxt
        frontier = nxt
        d += 1
    return dist


def distance(G: Graph, x: int, y: int) -> int | None:
    """Shortest-path length from ``x`` to ``y``, or ``None`` if unreachable."""
    G._check(y)
    d = bfs_layers(G, x)[y]
    return None if d < 0 else d


def all_distances(G: Graph) -> np.ndarray:
    """All-pairs BFS distance matrix; ``-1`` marks unreachable pairs."""
    return np.array([bfs_layers(G, x) for x in range(G.n)], dtype=np.int64).reshape(G.n, G.n)


def odd_distance(G: Graph, x: int, y: int) -> int | None:
    """Length of a shortest odd walk from ``x`` to ``y``, or ``None``.

    BFS over (vertex, parity) states.
    """
    G._check(x)
    G._check(y)
    rows = G.rows()
    seen = [1 << x, 0]
    frontier = [1 << x, 0]
    d = 0
    while frontier[0] or frontier[1]:
        d += 1
        nxt_odd = _nbhd(rows, frontier[0]) & ~seen[1]
        nxt_even = _nbhd(rows, frontier[1]) & ~seen[0]
        seen[1] |= nxt_odd
        seen[0] |= nxt_even
        frontier = [nxt_even, nxt_odd]
        if d % 2 == 1 and nxt_odd >> y & 1:
            return d
    return None


def components(G: Graph) -> list[list[int]]:
    """Connected components, each sorted, listed by least vertex."""
    rows = G.rows()
    left = (1 << G.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            frontier = _nbhd(rows, frontier) & ~seen
            seen |= frontier
        out.append(list(_iter_bits(seen)))
        left &= ~seen
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def bipartition(G: Graph) -> list[int] | None:
    """Side (0 or 1) per vertex if ``G`` is bipartite, else ``None``.

    The least vertex of each component is put on side 0.
    """
    rows = G.rows()
    side = [-1] * G.n
    for comp in components(G):
        root = comp[0]
        side[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in _iter_bits(rows[u]):
                    if side[v] < 0:
                        side[v] = 1 - side[u]
                        nxt.append(v)
                    elif side[v] == side[u]:
                        return None
            frontier = nxt
    return side


def is_complete_bipartite_on(G: Graph, side: Sequence[int], comp: Sequence[int]) -> bool:
    """Does ``G[comp]`` contain every cross pair of the 2-colouring ``side``?"""
    rows = G.rows()
    masks = [0, 0]
    for v in comp:
        masks[side[v]] |= 1 << v
    return all(rows[v] & masks[1 - side[v]] == masks[1 - side[v]] for v in comp)


# -- graph6 ---------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def graph6_encode(G: Graph, header: bool = False) -> str:
    """graph6 text for ``G``: upper triangle scanned column by column."""
    n = G.n
    a = G.matrix()
    if n > 1:
        iu, ju = np.triu_indices(n, 1)
        order = np.lexsort((iu, ju))
        bits = a[iu[order], ju[order]].astype(np.uint8)
    else:
        bits = np.zeros(0, dtype=np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) + 63
    body = vals.astype(np.uint8).tobytes().decode("ascii")
    return (GRAPH6_HEADER if header else "") + _encode_n(n) + body


def graph6_decode(text: str) -> Graph:
    """Parse one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    if s.startswith(">>"):
        raise GraphError("unsupported header (only >>graph6<< is understood)")
    if s[0] in ":;&":
        raise GraphError("sparse6/digraph6 input is not supported")
    data = s.encode("ascii")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 characters must lie in '?'..'~'")
    vals = [c - 63 for c in data]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = vals[8:]
    else:
        raise GraphError("truncated graph6 size field")
    npairs = n * (n - 1) // 2
    if len(body) != (npairs + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {(npairs + 5) // 6}")
    if npairs == 0:
        return Graph.empty(n)
    bits = np.unpackbits(np.array(body, dtype=np.uint8)[:, None], axis=1)[:, 2:].reshape(-1)
    if bits[npairs:].any():
        raise GraphError("non-zero padding bits in graph6 body")
    iu, ju = np.triu_indices(n, 1)
    order = np.lexsort((iu, ju))
    sel = bits[:npairs].astype(bool)
    pairs = np.stack([iu[order][sel], ju[order][sel]], axis=1)
    return Graph.empty(n).with_edges(pairs)


def pair_index(i: int, j: int) -> int:
    """Position of pair ``i < j`` in graph6 bit order."""
    return j * (j - 1) // 2 + i


def graph_from_code(n: int, code: int) -> Graph:
    """Graph whose edge set is the set bits of ``code`` in graph6 pair order."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    return from_edges(n, [pairs[b] for b in _iter_bits(code)])


def graph_code(G: Graph) -> int:
    return sum(1 << pair_index(u, v) for u, v in G.edges())
