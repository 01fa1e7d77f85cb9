"""Named starting graphs, lower-bound witnesses and random samplers."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from hboot.graph import Graph, GraphError, bipartition, disjoint_union, from_edges, graph6_decode
from hboot.numtheory import F_cycle, predict_ell


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class NamedGraph:
    graph: Graph
    name: str
    labels: dict[str, int] = field(default_factory=dict)
    levels: tuple[int, ...] | None = None

    def __getitem__(self, role: str) -> int:
        return self.labels[role]

    @property
    def n(self) -> int:
        return self.graph.n


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionError(msg)


def path(n: int) -> NamedGraph:
    _need(n >= 1, "a path needs at least one vertex")
    return NamedGraph(from_edges(n, [(i, i + 1) for i in range(n - 1)]), f"path:{n}", {"start": 0, "end": n - 1})


def cycle(k: int) -> NamedGraph:
    _need(k >= 3, "a cycle needs at least three vertices")
    return NamedGraph(from_edges(k, [(i, (i + 1) % k) for i in range(k)]), f"cycle:{k}")


def complete(n: int) -> NamedGraph:
    _need(n >= 1, "a complete graph needs at least one vertex")
    return NamedGraph(from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)]), f"complete:{n}")


def complete_bipartite(a: int, b: int) -> NamedGraph:
    """Sides ``0..a-1`` and ``a..a+b-1``."""
    _need(a >= 1 and b >= 1, "both sides need at least one vertex")
    g = from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    return NamedGraph(g, f"kab:{a},{b}")


def path_triangle(ell: int) -> NamedGraph:
    """Triangle ``v0 w0 x1``, path ``x1 .. x_{ell-1}`` and two leaves on ``x_{ell-1}``.

    Vertices: ``v0 = 0``, ``w0 = 1``, ``x_j = j + 1``, ``v_ell = ell + 1``,
    ``w_ell = ell + 2``.  ``levels[v]`` is the index ``j`` of the layer holding
    ``v``; pairs with equal level parity are the "even" pairs.
    """
    _need(ell >= 3, f"arm parameter must be at least 3, got {ell}")
    v0, w0, vl, wl = 0, 1, ell + 1, ell + 2
    x = lambda j: j + 1  # noqa: E731
    edges = [(v0, w0), (v0, x(1)), (w0, x(1))]
    edges += [(x(j), x(j + 1)) for j in range(1, ell - 1)]
    edges += [(x(ell - 1), vl), (x(ell - 1), wl)]
    levels = (0, 0, *range(1, ell), ell, ell)
    labels = {"v0": v0, "w0": w0, "v_ell": vl, "w_ell": wl}
    labels.update({f"x{j}": x(j) for j in range(1, ell)})
    return NamedGraph(from_edges(ell + 3, edges), f"pdelta:{ell}", labels, levels)


def complete_bipartite_plus_edge(k: int, larger_side: bool = True) -> NamedGraph:
    """``K_{floor(k/2), ceil(k/2)}`` plus one edge ``z z'`` inside a side.

    The small side is ``0..floor(k/2)-1``; ``z, z'`` are the first two vertices
    of the chosen side.
    """
    _need(k >= 3, "k must be at least 3")
    a, b = k // 2, (k + 1) // 2
    base = complete_bipartite(a, b).graph
    if larger_side or a < 2:
        z, z2 = a, a + 1
    else:
        z, z2 = 0, 1
    return NamedGraph(base.with_edges([(z, z2)]), f"kabe:{k}", {"z": z, "z'": z2})


def cycle_with_chord(k: int, offset: int) -> NamedGraph:
    _need(k >= 4, "a chord needs a cycle of length at least 4")
    _need(2 <= offset <= k // 2, f"chord offset must lie in 2..{k // 2}, got {offset}")
    g = cycle(k).graph.with_edges([(0, offset)])
    return NamedGraph(g, f"chord:{k},{offset}", {"a": 0, "b": offset})


def lower_bound_witness(k: int, r: int) -> tuple[NamedGraph, tuple[int, int]]:
    """Starting graph and the pair expected to appear exactly at round ``r``."""
    _need(k >= 3, "k must be at least 3")
    if k % 2:
        _need(r >= 2, "odd witnesses need r >= 2")
        n = (k - 1) ** (r - 1) - F_cycle(k) + 1
        _need(n >= k, f"witness path on {n} vertices is too short for k={k}")
        return path(n), (0, n - 1)
    _need(r >= 2, "even witnesses need r >= 2")
    ell = predict_ell(k, r)
    _need(ell >= 3, f"arm parameter {ell} is degenerate for k={k}, r={r}")
    g = path_triangle(ell)
    return g, (g["v_ell"], g["w_ell"])


def cycle_union_witness(ks, n: int) -> NamedGraph:
    """Cycles of all lengths but the largest, then a path on the remaining vertices."""
    ks = sorted((int(k) for k in ks), reverse=True)
    _need(len(ks) >= 1 and all(k >= 3 for k in ks), "cycle lengths must be at least 3")
    rest = sum(ks[1:])
    _need(n >= rest + ks[0], f"need n >= {rest + ks[0]}, got {n}")
    parts = [cycle(k).graph for k in ks[1:]] + [path(n - rest).graph]
    g = disjoint_union(*parts)
    return NamedGraph(g, "cuw:" + ",".join(map(str, ks)) + f";{n}", {"path_start": rest, "path_end": n - 1})


# -- random graphs -----------------------------------------------------------------


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi ``G(n, p)``."""
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph.empty(n).with_edges(np.stack([iu[keep], ju[keep]], axis=1))


def gnm(n: int, m: int, rng: np.random.Generator) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    if not 0 <= m <= len(iu):
        raise ConstructionError(f"cannot place {m} edges on {n} vertices")
    pick = rng.choice(len(iu), size=m, replace=False)
    return Graph.empty(n).with_edges(np.stack([iu[pick], ju[pick]], axis=1))


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n <= 1:
        return Graph.empty(n)
    if n == 2:
        return from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return from_edges(n, edges)


def random_connected(n: int, p: float, rng: np.random.Generator) -> Graph:
    """``G(n, p)`` united with a uniform random spanning tree (always connected)."""
    return gnp(n, p, rng).union(random_tree(n, rng))


def random_connected_bipartite(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Random tree plus ``G(n, p)`` edges kept only across the tree's 2-colouring."""
    tree = random_tree(n, rng)
    side = np.array(bipartition(tree))
    extra = gnp(n, p, rng).matrix() & (side[:, None] != side[None, :])
    return tree.union(Graph.from_matrix(extra))


def sampling_densities(n: int) -> tuple[float, ...]:
    """Sparse, near-critical and dense edge probabilities."""
    return (min(1.0, 1.5 / n), min(1.0, 2 * np.log(n) / n), 0.5)


# -- textual specs -----------------------------------------------------------------


def _ints(arg: str, count: int | None = None) -> list[int]:
    try:
        vals = [int(a) for a in arg.split(",") if a != ""]
    except ValueError as exc:
        raise ConstructionError(f"expected integers, got {arg!r}") from exc
    if count is not None and len(vals) != count:
        raise ConstructionError(f"expected {count} integer(s), got {arg!r}")
    return vals


def parse_graph(spec: str) -> NamedGraph:
    """Build a graph from ``kind:args``.

    Kinds: ``path:n``, ``cycle:k``, ``complete:n``, ``kab:a,b``, ``pdelta:ell``,
    ``kabe:k``, ``chord:k,offset``, ``witness:k,r``, ``cuw:k1,k2,..;n``,
    ``g6:<graph6>`` and ``file:<path>`` (first graph6 line of the file).
    """
    kind, sep, arg = spec.strip().partition(":")
    if not sep:
        raise ConstructionError(f"graph spec {spec!r} lacks a ':'")
    try:
        if kind == "path":
            return path(*_ints(arg, 1))
        if kind == "cycle":
            return cycle(*_ints(arg, 1))
        if kind == "complete":
            return complete(*_ints(arg, 1))
        if kind == "kab":
            return complete_bipartite(*_ints(arg, 2))
        if kind == "pdelta":
            return path_triangle(*_ints(arg, 1))
        if kind == "kabe":
            return complete_bipartite_plus_edge(*_ints(arg, 1))
        if kind == "chord":
            return cycle_with_chord(*_ints(arg, 2))
        if kind == "witness":
            return lower_bound_witness(*_ints(arg, 2))[0]
        if kind == "cuw":
            ks, _, n = arg.partition(";")
            return cycle_union_witness(_ints(ks), *_ints(n, 1))
        if kind == "g6":
            return NamedGraph(graph6_decode(arg), spec)
        if kind == "file":
            lines = [ln for ln in Path(arg).read_text().splitlines() if ln.strip()]
            if not lines:
                raise ConstructionError(f"{arg} holds no graph")
            return NamedGraph(graph6_decode(lines[0]), spec)
    except GraphError as exc:
        raise ConstructionError(str(exc)) from exc
    except OSError as exc:
        raise ConstructionError(f"cannot read {arg}: {exc}") from exc
    raise ConstructionError(f"unknown graph kind {kind!r}")
