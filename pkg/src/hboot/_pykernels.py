"""Pure-Python twins of the compiled kernels.

Same signatures and results as :mod:`hboot._ckernels`; rows are handled as
Python ints where bit ``v`` of row ``u`` marks the edge ``uv``.
"""

from __future__ import annotations

import numpy as np


def _rows(bits: np.ndarray) -> list[int]:
    arr = np.ascontiguousarray(bits, dtype="<u8")
    return [int.from_bytes(arr[u].tobytes(), "little") for u in range(arr.shape[0])]


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _walks(rows: list[int], L: int) -> list[list[int]]:
    n = len(rows)
    walk = [[1 << u for u in range(n)]]
    for _ in range(L):
        prev = walk[-1]
        cur = []
        for u in range(n):
            acc = 0
            for x in _iter_bits(prev[u]):
                acc |= rows[x]
            cur.append(acc)
        walk.append(cur)
    return walk


def _dfs(rows, walk, w, v, r, visited) -> bool:
    if r == 1:
        return bool(rows[w] >> v & 1)
    if r == 2:
        return bool(rows[w] & rows[v] & ~visited)
    cand = rows[w] & walk[r - 1][v] & ~visited & ~(1 << v)
    for x in _iter_bits(cand):
        if _dfs(rows, walk, x, v, r - 1, visited | (1 << x)):
            return True
    return False


def closing_pairs_path(bits: np.ndarray, L: int) -> np.ndarray:
    rows = _rows(bits)
    n = len(rows)
    out: list[tuple[int, int]] = []
    if n < 2 or L < 2:
        return np.empty((0, 2), dtype=np.int64)
    full = (1 << n) - 1
    walk = _walks(rows, L) if L >= 3 else None
    for u in range(n):
        target = full & ~rows[u] & ~((2 << u) - 1)
        if not target:
            continue
        if L == 2:
            acc = 0
            for x in _iter_bits(rows[u]):
                acc |= rows[x]
                if acc & target == target:
                    break
            out.extend((u, v) for v in _iter_bits(acc & target))
            continue
        target &= walk[L][u]
        for v in _iter_bits(target):
            if _dfs(rows, walk, u, v, L, 1 << u):
                out.append((u, v))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def path_exists(bits: np.ndarray, u: int, v: int, L: int, avoid=None) -> bool:
    if L < 1 or u == v:
        return False
    rows = _rows(bits)
    visited = 0
    if avoid is not None:
        visited = int.from_bytes(np.ascontiguousarray(avoid, dtype="<u8").tobytes(), "little")
    if visited >> u & 1 or visited >> v & 1:
        return False
    walk = _walks(rows, L)
    if not walk[L][u] >> v & 1:
        return False
    return _dfs(rows, walk, u, v, L, visited | (1 << u))


def _small_tau(rows: list[int], n: int, L: int, cap: int) -> int:
    full = (1 << n) - 1
    t = 0
    while True:
        add = [0] * n
        changed = False
        for u in range(n):
            for v in _iter_bits(full & ~rows[u] & ~((2 << u) - 1)):
                if _dfs_plain(rows, u, v, L, 1 << u):
                    add[u] |= 1 << v
                    add[v] |= 1 << u
                    changed = True
        if not changed:
            return t
        for u in range(n):
            rows[u] |= add[u]
        t += 1
        if t > cap:
            return -1


def _dfs_plain(rows, w, v, r, visited) -> bool:
    if r == 1:
        return bool(rows[w] >> v & 1)
    if r == 2:
        return bool(rows[w] & rows[v] & ~visited)
    for x in _iter_bits(rows[w] & ~visited & ~(1 << v)):
        if _dfs_plain(rows, x, v, r - 1, visited | (1 << x)):
            return True
    return False


def _connected(rows: list[int], n: int) -> bool:
    if n <= 1:
        return True
    seen = frontier = 1
    while frontier:
        nxt = 0
        for x in _iter_bits(frontier):
            nxt |= rows[x]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def scan_codes(n: int, L: int, start: int, stop: int, connected_only: bool, limit: int):
    if n > 11:
        raise ValueError("scan_codes supports at most 11 vertices")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    best, count, enumerated = -1, 0, 0
    best_codes: list[int] = []
    for code in range(start, stop):
        rows = [0] * n
        for b in _iter_bits(code):
            i, j = pairs[b]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        if connected_only and not _connected(rows, n):
            continue
        enumerated += 1
        t = _small_tau(rows, n, L, len(pairs) + 1)
        if t > best:
            best, count, best_codes = t, 0, []
        if t == best:
            count += 1
            if len(best_codes) < limit:
                best_codes.append(code)
    return best, best_codes, enumerated, count
