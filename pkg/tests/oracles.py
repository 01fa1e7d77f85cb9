"""Slow, independent reference implementations used to freeze expected values.

Nothing here imports the package's algorithms; graphs cross over as edge lists.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher


def to_nx(G) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def cycle_nx(k: int) -> nx.Graph:
    return nx.cycle_graph(k)


def union_nx(ks) -> nx.Graph:
    return nx.disjoint_union_all([nx.cycle_graph(k) for k in ks])


def embeddings(pattern: nx.Graph, host: nx.Graph) -> int:
    """Injective homomorphisms pattern -> host."""
    return sum(1 for _ in GraphMatcher(host, pattern).subgraph_monomorphisms_iter())


def copies(pattern: nx.Graph, host: nx.Graph, aut: int | None = None) -> int:
    if pattern.number_of_nodes() > host.number_of_nodes():
        return 0
    return embeddings(pattern, host) // (aut or embeddings(pattern, pattern))


def closing_by_counting(pattern: nx.Graph, host: nx.Graph) -> set[tuple[int, int]]:
    """Non-edges whose addition raises the number of copies of ``pattern``."""
    if pattern.number_of_nodes() > host.number_of_nodes():
        return set()
    aut = embeddings(pattern, pattern)
    base = copies(pattern, host, aut)
    out = set()
    for u, v in itertools.combinations(sorted(host.nodes), 2):
        if host.has_edge(u, v):
            continue
        h2 = host.copy()
        h2.add_edge(u, v)
        if copies(pattern, h2, aut) > base:
            out.add((u, v))
    return out


def has_path_of_length(host: nx.Graph, u: int, v: int, L: int) -> bool:
    return any(len(p) == L + 1 for p in nx.all_simple_paths(host, u, v, cutoff=L))


def cycle_process(host: nx.Graph, k: int) -> list[set[tuple[int, int]]]:
    """Synchronous C_k rounds by simple-path enumeration; returns the added sets."""
    g = host.copy()
    rounds = []
    while True:
        new = {
            (u, v)
            for u, v in itertools.combinations(sorted(g.nodes), 2)
            if not g.has_edge(u, v) and has_path_of_length(g, u, v, k - 1)
        }
        if not new:
            return rounds
        g.add_edges_from(new)
        rounds.append(new)


def frobenius_sieve(x: int, y: int) -> int:
    limit = x * y
    ok = [False] * (limit + 1)
    ok[0] = True
    for d in range(1, limit + 1):
        ok[d] = (d >= x and ok[d - x]) or (d >= y and ok[d - y])
    gaps = [d for d in range(limit + 1) if not ok[d]]
    return gaps[-1] if gaps else -1


def representable_brute(d: int, x: int, y: int) -> bool:
    return any((d - a * x) >= 0 and (d - a * x) % y == 0 for a in range(d // x + 1)) if x else d % y == 0


def A_brute(i: int, k: int, top: int, capped: bool = False) -> set[int]:
    base = (k - 1) ** i
    cap = None
    if capped:
        if i == 0:
            return {1} & set(range(1, top + 1))
        if i == 1:
            return {k - 1} & set(range(1, top + 1))
        cap = (k - 1) ** (i - 2) * (k - 2)
    out = set()
    for a in range(base // (k - 2) + 1):
        for b in range(base // k + 1):
            if cap is not None and a + b > cap:
                continue
            d = base - a * (k - 2) - b * k
            if 1 <= d <= top:
                out.add(d)
    return out


def odd_walk_bfs(edges, n: int, x: int, y: int):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {(x, 0): 0}
    q = deque([(x, 0)])
    while q:
        v, p = q.popleft()
        for w in adj[v]:
            s = (w, 1 - p)
            if s not in dist:
                dist[s] = dist[(v, p)] + 1
                q.append(s)
    return dist.get((y, 1))
