# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for exact-length path detection and small-graph scans.

Graphs arrive as C-contiguous ``uint64`` arrays of shape ``(n, W)``; bit ``v``
of row ``u`` lives in word ``v >> 6`` at position ``v & 63``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint32_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset, memcpy

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctz(unsigned int) nogil


cdef inline bint _test(const uint64_t* row, Py_ssize_t v) noexcept nogil:
    return (row[v >> 6] >> (v & 63)) & 1


cdef struct PairBuf:
    int64_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int _push(PairBuf* buf, int64_t u, int64_t v) noexcept nogil:
    cdef int64_t* grown
    if buf.size == buf.cap:
        buf.cap = buf.cap * 2 if buf.cap else 256
        grown = <int64_t*> realloc(buf.data, buf.cap * 2 * sizeof(int64_t))
        if grown == NULL:
            return -1
        buf.data = grown
    buf.data[2 * buf.size] = u
    buf.data[2 * buf.size + 1] = v
    buf.size += 1
    return 0


cdef object _to_array(PairBuf* buf):
    out = np.empty((buf.size, 2), dtype=np.int64)
    cdef int64_t[:, ::1] view = out
    if buf.size:
        memcpy(&view[0, 0], buf.data, buf.size * 2 * sizeof(int64_t))
    return out


cdef void _walks(const uint64_t* adj, Py_ssize_t n, Py_ssize_t W, int L,
                 uint64_t* walk) noexcept nogil:
    # walk[r][u] = vertices reachable from u by a walk of exactly r edges
    cdef Py_ssize_t u, i, j, x
    cdef int r
    cdef uint64_t word
    cdef uint64_t* dst
    cdef const uint64_t* src
    memset(walk, 0, n * W * sizeof(uint64_t))
    for u in range(n):
        walk[u * W + (u >> 6)] = (<uint64_t> 1) << (u & 63)
    for r in range(1, L + 1):
        for u in range(n):
            dst = walk + (r * n + u) * W
            src = walk + ((r - 1) * n + u) * W
            memset(dst, 0, W * sizeof(uint64_t))
            for i in range(W):
                word = src[i]
                while word:
                    x = i * 64 + __builtin_ctzll(word)
                    word &= word - 1
                    for j in range(W):
                        dst[j] |= adj[x * W + j]


cdef bint _dfs(const uint64_t* adj, const uint64_t* walk, Py_ssize_t n, Py_ssize_t W,
               Py_ssize_t w, Py_ssize_t v, int r, uint64_t* visited,
               uint64_t* scratch) noexcept nogil:
    # Is there a simple path of exactly r edges from w to v avoiding visited?
    cdef const uint64_t* nw = adj + w * W
    cdef const uint64_t* nv = adj + v * W
    cdef const uint64_t* reach
    cdef uint64_t* cand = scratch
    cdef Py_ssize_t i, x
    cdef uint64_t word, bit
    if r == 1:
        return _test(nw, v)
    if r == 2:
        for i in range(W):
            if nw[i] & nv[i] & ~visited[i]:
                return True
        return False
    reach = walk + ((r - 1) * n + v) * W
    for i in range(W):
        cand[i] = nw[i] & reach[i] & ~visited[i]
    cand[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
    for i in range(W):
        word = cand[i]
        while word:
            bit = word & (~word + 1)
            word ^= bit
            x = i * 64 + __builtin_ctzll(bit)
            visited[i] |= bit
            if _dfs(adj, walk, n, W, x, v, r - 1, visited, scratch + W):
                visited[i] &= ~bit
                return True
            visited[i] &= ~bit
    return False


def closing_pairs_path(cnp.ndarray bits, int L):
    """Non-adjacent pairs ``u < v`` joined by a simple path of exactly ``L`` edges."""
    cdef const uint64_t[:, ::1] view = np.ascontiguousarray(bits, dtype=np.uint64)
    cdef Py_ssize_t n = view.shape[0]
    cdef Py_ssize_t W = view.shape[1]
    cdef PairBuf buf
    buf.data = NULL
    buf.size = 0
    buf.cap = 0
    if n < 2 or L < 1:
        return np.empty((0, 2), dtype=np.int64)
    if L == 1:
        return np.empty((0, 2), dtype=np.int64)
    cdef const uint64_t* adj = &view[0, 0]
    cdef uint64_t* walk = NULL
    cdef uint64_t* visited = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* scratch = <uint64_t*> malloc((L + 1) * W * sizeof(uint64_t))
    cdef uint64_t* target = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef uint64_t* acc = <uint64_t*> malloc(W * sizeof(uint64_t))
    cdef Py_ssize_t u, v, i, j, x
    cdef uint64_t word, bit
    cdef bint covered
    cdef int failed = 0
    if visited == NULL or scratch == NULL or target == NULL or acc == NULL:
        free(visited); free(scratch); free(target); free(acc)
        raise MemoryError()
    if L >= 3:
        walk = <uint64_t*> malloc((L + 1) * n * W * sizeof(uint64_t))
        if walk == NULL:
            free(visited); free(scratch); free(target); free(acc)
            raise MemoryError()
    with nogil:
        if L >= 3:
            _walks(adj, n, W, L, walk)
        for u in range(n):
            # target = non-neighbours v > u
            for i in range(W):
                target[i] = ~adj[u * W + i]
            for i in range(W):
                if (i + 1) * 64 <= u + 1:
                    target[i] = 0
                elif i * 64 <= u:
                    target[i] &= ~(((<uint64_t> 2) << (u & 63)) - 1)
            if (n & 63) != 0:
                target[W - 1] &= ((<uint64_t> 1) << (n & 63)) - 1
            if L == 2:
                memset(acc, 0, W * sizeof(uint64_t))
                for i in range(W):
                    word = adj[u * W + i]
                    while word:
                        x = i * 64 + __builtin_ctzll(word)
                        word &= word - 1
                        covered = True
                        for j in range(W):
                            acc[j] |= adj[x * W + j]
                            if (acc[j] & target[j]) != target[j]:
                                covered = False
                        if covered:
                            break
                    else:
                        continue
                    break
                for i in range(W):
                    word = acc[i] & target[i]
                    while word:
                        v = i * 64 + __builtin_ctzll(word)
                        word &= word - 1
                        if _push(&buf, u, v) != 0:
                            failed = 1
                continue
            for i in range(W):
                target[i] &= walk[(L * n + u) * W + i]
            for i in range(W):
                word = target[i]
                while word:
                    v = i * 64 + __builtin_ctzll(word)
                    word &= word - 1
                    memset(visited, 0, W * sizeof(uint64_t))
                    visited[u >> 6] = (<uint64_t> 1) << (u & 63)
                    if _dfs(adj, walk, n, W, u, v, L, visited, scratch):
                        if _push(&buf, u, v) != 0:
                            failed = 1
    free(walk); free(visited); free(scratch); free(target); free(acc)
    if failed:
        free(buf.data)
        raise MemoryError()
    out = _to_array(&buf)
    free(buf.data)
    return out


def path_exists(cnp.ndarray bits, Py_ssize_t u, Py_ssize_t v, int L, avoid=None):
    """Simple path of exactly ``L`` edges from ``u`` to ``v`` missing ``avoid``."""
    cdef const uint64_t[:, ::1] view = np.ascontiguousarray(bits, dtype=np.uint64)
    cdef Py_ssize_t n = view.shape[0]
    cdef Py_ssize_t W = view.shape[1]
    cdef const uint64_t* adj = &view[0, 0]
    cdef uint64_t* walk = NULL
    cdef uint64_t* visited
    cdef uint64_t* scratch
    cdef bint found
    cdef Py_ssize_t i
    cdef const uint64_t[::1] avoid_view
    if L < 1 or u == v:
        return False
    walk = <uint64_t*> malloc((L + 1) * n * W * sizeof(uint64_t))
    visited = <uint64_t*> malloc(W * sizeof(uint64_t))
    scratch = <uint64_t*> malloc((L + 1) * W * sizeof(uint64_t))
    if walk == NULL or visited == NULL or scratch == NULL:
        free(walk); free(visited); free(scratch)
        raise MemoryError()
    memset(visited, 0, W * sizeof(uint64_t))
    if avoid is not None:
        avoid_view = np.ascontiguousarray(avoid, dtype=np.uint64)
        for i in range(W):
            visited[i] = avoid_view[i]
    with nogil:
        if _test(visited, u) or _test(visited, v):
            found = False
        else:
            visited[u >> 6] |= (<uint64_t> 1) << (u & 63)
            _walks(adj, n, W, L, walk)
            found = _test(walk + (L * n + u) * W, v) and \
                _dfs(adj, walk, n, W, u, v, L, visited, scratch)
    free(walk); free(visited); free(scratch)
    return bool(found)


# ---------------------------------------------------------------------------
# exhaustive scan over labelled graphs on at most 11 vertices

cdef bint _small_dfs(const uint32_t* rows, int w, int v, int r, uint32_t visited) noexcept nogil:
    cdef uint32_t cand, bit
    cdef int x
    if r == 1:
        return (rows[w] >> v) & 1
    if r == 2:
        return (rows[w] & rows[v] & ~visited) != 0
    cand = rows[w] & ~visited & ~((<uint32_t> 1) << v)
    while cand:
        bit = cand & (~cand + 1)
        cand ^= bit
        x = __builtin_ctz(bit)
        if _small_dfs(rows, x, v, r - 1, visited | bit):
            return True
    return False


cdef int _small_tau(uint32_t* rows, int n, int L, int cap) noexcept nogil:
    cdef uint32_t add[32]
    cdef uint32_t full, nonadj, word
    cdef int u, v, t
    cdef bint changed
    full = ((<uint32_t> 1) << n) - 1
    t = 0
    while True:
        changed = False
        for u in range(n):
            add[u] = 0
        for u in range(n):
            nonadj = full & ~rows[u] & ~(((<uint32_t> 2) << u) - 1)
            while nonadj:
                v = __builtin_ctz(nonadj)
                nonadj &= nonadj - 1
                if _small_dfs(rows, u, v, L, (<uint32_t> 1) << u):
                    add[u] |= (<uint32_t> 1) << v
                    add[v] |= (<uint32_t> 1) << u
                    changed = True
        if not changed:
            return t
        for u in range(n):
            rows[u] |= add[u]
        t += 1
        if t > cap:
            return -1


cdef bint _small_connected(const uint32_t* rows, int n) noexcept nogil:
    cdef uint32_t seen = 1, frontier = 1, nxt, word
    cdef int x
    if n <= 1:
        return True
    while frontier:
        nxt = 0
        word = frontier
        while word:
            x = __builtin_ctz(word)
            word &= word - 1
            nxt |= rows[x]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == ((<uint32_t> 1) << n) - 1


def scan_codes(int n, int L, uint64_t start, uint64_t stop, bint connected_only, int limit):
    """Max running time of the exact-path rule over graph codes in ``[start, stop)``.

    Bit ``j*(j-1)/2 + i`` of a code is the pair ``(i, j)``, ``i < j`` (graph6 order).
    Returns ``(max_tau, argmax_codes, enumerated, argmax_count)``.
    """
    if n > 11:
        raise ValueError("scan_codes supports at most 11 vertices")
    cdef uint32_t rows[32]
    cdef int pi[64]
    cdef int pj[64]
    cdef int npairs = n * (n - 1) // 2
    cdef int i, j, t, best = -1
    cdef uint64_t code, c
    cdef int64_t enumerated = 0, count = 0
    cdef int bit
    t = 0
    for j in range(1, n):
        for i in range(j):
            pi[t] = i
            pj[t] = j
            t += 1
    best_codes = []
    for code in range(start, stop):
        for i in range(n):
            rows[i] = 0
        c = code
        while c:
            bit = __builtin_ctzll(c)
            c &= c - 1
            rows[pi[bit]] |= (<uint32_t> 1) << pj[bit]
            rows[pj[bit]] |= (<uint32_t> 1) << pi[bit]
        if connected_only and not _small_connected(rows, n):
            continue
        enumerated += 1
        t = _small_tau(rows, n, L, npairs + 1)
        if t > best:
            best = t
            count = 0
            best_codes = []
        if t == best:
            count += 1
            if len(best_codes) < limit:
                best_codes.append(code)
    return best, best_codes, enumerated, count
