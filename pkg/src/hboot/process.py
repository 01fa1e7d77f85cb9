"""Synchronous bootstrap rounds: traces, birth times and difference sets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from hboot.graph import Graph, GraphError, _pack, bipartition, components, from_edges, graph6_encode
from hboot.patterns import Cycle, CycleUnion, Pattern, closing_array

SCHEMA_VERSION = 1


class RoundLimitError(RuntimeError):
    """The process was still adding edges when the round budget ran out."""


def _stable_target(G: Graph, H: Pattern) -> np.ndarray | None:
    """Packed adjacency of a graph the process would stop at, if one is known.

    Path-driven rules never join two components, so each component of ``G``
    is either too small to change or ends up a clique (or, for even cycles on
    a bipartite start, complete bipartite on the fixed sides).  Both shapes
    are stable, so reaching them ends the run without a probing scan.
    """
    if isinstance(H, Cycle):
        small = H.k
    elif isinstance(H, CycleUnion):
        small = min(H.lengths)
    else:
        return None
    side = bipartition(G) if isinstance(H, Cycle) and H.k % 2 == 0 else None
    a = G.matrix()
    for comp in components(G):
        if len(comp) < small:
            continue
        idx = np.array(comp)
        block = np.ones((len(comp), len(comp)), dtype=bool)
        if side is not None:
            s = np.array([side[v] for v in comp])
            block = s[:, None] != s[None, :]
        np.fill_diagonal(block, False)
        a[np.ix_(idx, idx)] = block
    return _pack(a)


def evolve(G: Graph, H: Pattern) -> Iterator[tuple[Graph, np.ndarray]]:
    """Yield ``(G_i, added_i)`` for every round that adds at least one edge."""
    target = _stable_target(G, H)
    current = G
    while not current.is_complete():
        if target is not None and np.array_equal(current.bits, target):
            return
        added = closing_array(current, H)
        if len(added) == 0:
            return
        current = current.with_edges(added)
        yield current, added


@dataclass(frozen=True, eq=False)
class ProcessTrace:
    initial: Graph
    rule: Pattern
    rounds: tuple[np.ndarray, ...]
    final: Graph = field(repr=False)

    @property
    def tau(self) -> int:
        return len(self.rounds)

    @property
    def n(self) -> int:
        return self.initial.n

    @cached_property
    def birth_matrix(self) -> np.ndarray:
        """``B[u, v]`` is the round in which ``uv`` appears, ``-1`` if never."""
        B = np.full((self.n, self.n), -1, dtype=np.int32)
        B[self.initial.matrix()] = 0
        for i, added in enumerate(self.rounds, start=1):
            B[added[:, 0], added[:, 1]] = i
            B[added[:, 1], added[:, 0]] = i
        B.setflags(write=False)
        return B

    def birth(self, u: int, v: int) -> int | None:
        self.initial._check(u)
        self.initial._check(v)
        if u == v:
            raise GraphError("a vertex pair needs two distinct vertices")
        b = int(self.birth_matrix[u, v])
        return None if b < 0 else b

    def graph_at(self, i: int) -> Graph:
        """``G_i``; rounds past ``tau`` return the final graph."""
        if i < 0:
            raise ValueError("round index must be non-negative")
        if i >= self.tau:
            return self.final
        if i == 0:
            return self.initial
        return self.initial.with_edges(np.concatenate(self.rounds[:i]))

    def graphs(self) -> Iterator[Graph]:
        """``G_0, G_1, ..., G_tau`` built incrementally."""
        g = self.initial
        yield g
        for added in self.rounds:
            g = g.with_edges(added)
            yield g

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "rule": self.rule.spec,
            "tau": self.tau,
            "initial": graph6_encode(self.initial),
            "final": graph6_encode(self.final),
            "rounds": [added.tolist() for added in self.rounds],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def run(G: Graph, H: Pattern, max_rounds: int | None = None) -> ProcessTrace:
    """Run the ``H``-process on ``G`` until no closing edge is left.

    ``max_rounds`` defaults to ``n^2``, which can never be exhausted because
    every counted round adds an edge.
    """
    if max_rounds is None:
        max_rounds = max(1, G.n * G.n)
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    rounds = []
    final = G
    for current, added in evolve(G, H):
        if len(rounds) == max_rounds:
            raise RoundLimitError(f"still adding edges after {max_rounds} rounds")
        rounds.append(added)
        final = current
    return ProcessTrace(G, H, tuple(rounds), final)


def tau(G: Graph, H: Pattern, max_rounds: int | None = None) -> int:
    """Number of rounds that add edges before the process stabilises."""
    return run(G, H, max_rounds).tau


def birth_time(trace: ProcessTrace, e: tuple[int, int]) -> int | None:
    """Round in which ``e`` first appears (0 for initial edges), ``None`` if never."""
    u, v = e
    return trace.birth(u, v)


def final_graph(G: Graph, H: Pattern) -> Graph:
    return run(G, H).final


def difference_set(G: Graph) -> set[int]:
    """Differences ``d`` such that every pair ``(x, x + d)`` is an edge of ``G``."""
    a = G.matrix()
    return {d for d in range(1, G.n) if a.diagonal(d).all()}


def path_difference_sets(n_path: int, k: int, upto: int) -> list[set[int]]:
    """``[D_0, ..., D_upto]`` for the ``C_k``-process on the path ``P_{n_path}``."""
    if n_path < 2 or k < 3:
        raise ValueError("need a path on at least 2 vertices and k >= 3")
    if upto < 0:
        raise ValueError("upto must be non-negative")
    g = from_edges(n_path, [(i, i + 1) for i in range(n_path - 1)])
    out = [difference_set(g)]
    for current, _ in evolve(g, Cycle(k)):
        if len(out) > upto:
            break
        out.append(difference_set(current))
    while len(out) <= upto:
        out.append(set(out[-1]))
    return out
