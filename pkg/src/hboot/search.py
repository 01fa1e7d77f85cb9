"""Exhaustive and sampled searches for the maximum running time."""

from __future__ import annotations

import json
import os
from functools import lru_cache
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from hboot import kernels
from hboot.constructions import cycle_with_chord, gnp, random_connected, random_connected_bipartite, sampling_densities
from hboot.graph import Graph, _iter_bits, graph6_encode, graph_from_code, is_connected
from hboot.numtheory import predict_M
from hboot.patterns import Cycle, Pattern, SizeGuardError
from hboot.process import tau

EXHAUSTIVE_LIMIT = 8
ARGMAX_LIMIT = 32
CACHE_ENV = "HBOOT_CACHE"


@dataclass
class SearchResult:
    n: int
    rule: str
    max_tau: int | None
    argmax: list[str]
    enumerated: int
    dedup_mode: str
    connected_only: bool = False
    argmax_count: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


# -- canonical form -----------------------------------------------------------------


def _refine(rows: list[int], n: int) -> list[int]:
    """Stable colour refinement; colours are ranks, so the result is label-free."""
    colour = [0] * n
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in _iter_bits(rows[v])))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(colour)):
            return new
        colour = new


def canonical_code(G: Graph) -> int:
    """Isomorphism-invariant code: the largest column-wise adjacency code over
    all relabellings that list colour-refinement classes in rank order."""
    n = G.n
    if n <= 1:
        return 0
    rows = G.rows()
    colour = _refine(rows, n)
    slot_colour = sorted(colour)
    best: list[int] = []
    order: list[int] = []

    def twins(u: int, v: int) -> bool:
        return rows[u] & ~(1 << v) == rows[v] & ~(1 << u)

    def rec(pos: int, used: int, cols: list[int]):
        nonlocal best
        if pos == n:
            if cols > best:
                best = list(cols)
            return
        tried: list[int] = []
        for v in range(n):
            if used >> v & 1 or colour[v] != slot_colour[pos]:
                continue
            if any(twins(v, t) for t in tried):
                continue
            tried.append(v)
            col = 0
            for u in order:
                col = (col << 1) | (rows[v] >> u & 1)
            cols.append(col)
            if best and cols < best[: pos + 1]:
                cols.pop()
                continue
            order.append(v)
            rec(pos + 1, used | (1 << v), cols)
            order.pop()
            cols.pop()

    rec(0, 0, [])
    code, shift = 0, 0
    for j in range(1, n):
        # column j holds pairs (0, j) .. (j-1, j); bit i of it is position i
        col = best[j]
        for i in range(j):
            if col >> (j - 1 - i) & 1:
                code |= 1 << (shift + i)
        shift += j
    return code


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices (``n <= 8``)."""
    if n > EXHAUSTIVE_LIMIT:
        raise SizeGuardError(f"isomorphism classes enumerated only up to n={EXHAUSTIVE_LIMIT}")
    return [graph_from_code(n, c) for c in _class_codes(n)]


@lru_cache(maxsize=None)
def _class_codes(n: int) -> tuple[int, ...]:
    codes = {0}
    for m in range(2, n + 1):
        nxt = set()
        for code in codes:
            base = graph_from_code(m - 1, code)
            prev = base.edges()
            for nb in range(1 << (m - 1)):
                g = Graph.empty(m).with_edges(prev + [(u, m - 1) for u in _iter_bits(nb)])
                nxt.add(canonical_code(g))
        codes = nxt
    return tuple(sorted(codes))


# -- exhaustive search --------------------------------------------------------------


def _scan_chunk(args):
    n, L, start, stop, connected_only, limit = args
    return kernels.scan_codes(n, L, start, stop, connected_only, limit)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def _merge(results, limit: int) -> tuple[int, list[int], int, int]:
    best, codes, enumerated, count = -1, [], 0, 0
    for t, cs, e, c in results:
        enumerated += e
        if t > best:
            best, codes, count = t, [], 0
        if t == best:
            codes.extend(cs)
            count += c
    return best, sorted(codes)[:limit], enumerated, count


def _labelled_cycle(n: int, H: Cycle, connected_only: bool, workers: int, limit: int):
    total = 1 << (n * (n - 1) // 2)
    jobs = [(n, H.k - 1, s, e, connected_only, limit) for s, e in _chunks(total, max(1, workers) * 4)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    return _merge(parts, limit)


def _graphs(n: int, dedup: bool) -> Iterator[Graph]:
    if dedup:
        yield from nonisomorphic_graphs(n)
    else:
        for code in range(1 << (n * (n - 1) // 2)):
            yield graph_from_code(n, code)


def max_tau_exhaustive(
    n: int,
    H: Pattern,
    connected_only: bool = False,
    dedup: bool = False,
    workers: int = 1,
    limit: int = ARGMAX_LIMIT,
    cache: str | os.PathLike | None = None,
) -> SearchResult:
    """Exact maximum of the running time over all graphs on ``n`` vertices.

    ``dedup`` walks isomorphism classes instead of labelled graphs.  Labelled
    argmax graphs are the ``limit`` smallest codes; ``argmax_count`` is exact.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > EXHAUSTIVE_LIMIT:
        raise SizeGuardError(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}")
    mode = "iso-reduced" if dedup else "labeled"
    store = ResultCache.from_path(cache)
    if store is not None:
        hit = store.get(H.spec, n, mode, connected_only)
        if hit is not None:
            return hit
    if isinstance(H, Cycle) and not dedup:
        best, codes, enumerated, count = _labelled_cycle(n, H, connected_only, workers, limit)
        argmax = [graph6_encode(graph_from_code(n, c)) for c in codes]
    else:
        best, argmax, enumerated, count = -1, [], 0, 0
        for g in _graphs(n, dedup):
            if connected_only and not is_connected(g):
                continue
            enumerated += 1
            t = tau(g, H)
            if t > best:
                best, argmax, count = t, [], 0
            if t == best:
                count += 1
                if len(argmax) < limit:
                    argmax.append(graph6_encode(g))
    res = SearchResult(n, H.spec, best if enumerated else None, argmax, enumerated, mode, connected_only, count)
    if store is not None:
        store.put(res)
    return res


# -- sampling -----------------------------------------------------------------------


SAMPLE_FAMILIES = ("gnp", "connected", "bipartite")


def sample_graphs(n: int, samples: int, seed: int, family: str = "gnp") -> Iterator[Graph]:
    """Reproducible stream cycling through sparse, critical and dense densities."""
    if family not in SAMPLE_FAMILIES:
        raise ValueError(f"unknown sample family {family!r}")
    rng = np.random.default_rng(seed)
    ps = sampling_densities(n)
    make = {"gnp": gnp, "connected": random_connected, "bipartite": random_connected_bipartite}[family]
    for s in range(samples):
        yield make(n, ps[s % len(ps)], rng)


def max_tau_sampled(n: int, H: Pattern, samples: int, seed: int = 0, family: str = "gnp", limit: int = ARGMAX_LIMIT) -> SearchResult:
    if samples < 0:
        raise ValueError("samples must be non-negative")
    best, argmax, count, enumerated = -1, [], 0, 0
    for g in sample_graphs(n, samples, seed, family):
        enumerated += 1
        t = tau(g, H)
        if t > best:
            best, argmax, count = t, [], 0
        if t == best:
            count += 1
            if len(argmax) < limit:
                argmax.append(graph6_encode(g))
    return SearchResult(n, H.spec, best if enumerated else None, argmax, enumerated, f"sampled:{family}", family != "gnp", count, {"seed": seed})


def chord_sweep(k: int) -> dict:
    """Running time of ``C_k`` plus one chord, for every chord span."""
    if k < 4:
        raise ValueError("chord sweep needs k >= 4")
    rows = [{"offset": o, "tau": tau(cycle_with_chord(k, o).graph, Cycle(k))} for o in range(2, k // 2 + 1)]
    best = max(rows, key=lambda r: (r["tau"], -r["offset"]))
    return {"k": k, "rows": rows, "best_offset": best["offset"], "max_tau": best["tau"], "formula_at_n_eq_k": predict_M(k, k)}


# -- cache --------------------------------------------------------------------------


class ResultCache:
    """Append-only JSON-lines store of exhaustive results."""

    def __init__(self, path: Path):
        self.path = path

    @classmethod
    def from_path(cls, path: str | os.PathLike | None) -> "ResultCache | None":
        if path is None:
            path = os.environ.get(CACHE_ENV) or None
        return None if path is None else cls(Path(path))

    def get(self, rule: str, n: int, mode: str, connected_only: bool) -> SearchResult | None:
        if not self.path.exists():
            return None
        found = None
        for line in self.path.read_text().splitlines():
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if (rec.get("rule"), rec.get("n"), rec.get("dedup_mode"), rec.get("connected_only")) == (rule, n, mode, connected_only):
                found = rec
        if found is None:
            return None
        fields = SearchResult.__dataclass_fields__
        return SearchResult(**{k: v for k, v in found.items() if k in fields})

    def put(self, res: SearchResult) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(res.to_dict(), sort_keys=True) + "\n")
