"""Acceptance criteria, each timed and reported on one line.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are printed
at the end of the session) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import os
import sys
import time
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import cycle_process  # noqa: E402
from hboot.constructions import (  # noqa: E402
    complete_bipartite_plus_edge,
    cycle_union_witness,
    cycle_with_chord,
    lower_bound_witness,
    path,
    path_triangle,
    random_connected,
    random_connected_bipartite,
    sampling_densities,
)
from hboot.graph import graph_from_code  # noqa: E402
from hboot.numtheory import predict_ell, predict_r  # noqa: E402
from hboot.patterns import Cycle, CycleUnion, Generic, closing_edges, count_copies  # noqa: E402
from hboot.process import run, tau  # noqa: E402
from hboot.search import max_tau_exhaustive  # noqa: E402
from hboot.verify import check_interval_lemma, check_multiple_cycles, check_path_lemmas  # noqa: E402

RESULTS: list[str] = []


def record(num: int, ok: bool, seconds: float, limit: float, detail: str) -> None:
    within = seconds < limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"criterion {num:2d}: {verdict}  {seconds:7.2f}s (limit {limit:g}s)  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, detail
    assert within, f"took {seconds:.1f}s, limit {limit}s"


def ceil_log(base: int, x: int) -> int:
    r = 0
    while base**r < x:
        r += 1
    return r


def test_criterion_01_triangle_rule_on_paths():
    t0 = time.perf_counter()
    wrong, small = [], []
    for n in range(3, 1026):
        t = tau(path(n).graph, Cycle(3))
        if t != ceil_log(2, n - 1):
            (small if n < 6 else wrong).append((n, t))
    detail = f"n=3..1025 exact; mismatches {wrong}" + (f"; small-n deviations {small}" if small else "")
    record(1, not wrong, time.perf_counter() - t0, 60, detail)


def test_criterion_02_odd_witness_birth():
    t0 = time.perf_counter()
    seen = []
    for r, n in ((3, 10), (4, 58)):
        g, (x, y) = lower_bound_witness(5, r)
        tr = run(g.graph, Cycle(5))
        seen.append((g.n == n, tr.birth(x, y) == r, tr.tau == r))
    record(2, all(all(s) for s in seen), time.perf_counter() - t0, 10, f"P_10 and P_58 under C5: {seen}")


def test_criterion_03_even_witness_birth():
    t0 = time.perf_counter()
    seen = []
    for r, ell in ((3, 4), (4, 13), (5, 40)):
        assert predict_ell(4, r) == ell
        g = path_triangle(ell)
        tr = run(g.graph, Cycle(4))
        seen.append((ell, tr.birth(g["v_ell"], g["w_ell"]), tr.tau))
    ok = all(b == r and t == r for (_, b, t), r in zip(seen, (3, 4, 5)))
    record(3, ok, time.perf_counter() - t0, 30, f"(ell, birth, tau) = {seen}")


def test_criterion_04_even_witness_k6():
    t0 = time.perf_counter()
    g = path_triangle(predict_ell(6, 5))
    tr = run(g.graph, Cycle(6))
    born = tr.birth(g["v_ell"], g["w_ell"])
    ok = g.n == 310 and g.n > 6**3 and born == 5
    record(4, ok, time.perf_counter() - t0, 120, f"n={g.n}, birth={born}, tau={tr.tau}")


def test_criterion_05_upper_bound_stress():
    t0 = time.perf_counter()
    n, samples = 200, 500
    rng = np.random.default_rng(2024)
    ps = sampling_densities(n)
    cases = [(5, "connected", random_connected), (4, "connected", random_connected), (4, "bipartite", random_connected_bipartite)]
    violations, worst = [], {}
    for k, fam, make in cases:
        bound = predict_r(n, k)
        for s in range(samples):
            g = make(n, ps[s % 3], rng)
            t = tau(g, Cycle(k))
            worst[(k, fam)] = max(worst.get((k, fam), 0), t)
            if t > bound:
                violations.append((k, fam, s, t))
    extras = [path(n).graph, cycle_with_chord(n, n // 2).graph, path_triangle(n - 3).graph]
    for k in (4, 5):
        for g in extras:
            t = tau(g, Cycle(k))
            if t > predict_r(n, k):
                violations.append((k, "construction", g.edge_count, t))
    detail = f"3x{samples} samples at n=200, max tau {worst}, bounds k5={predict_r(n, 5)} k4={predict_r(n, 4)}, violations {violations}"
    record(5, not violations, time.perf_counter() - t0, 300, detail)


def test_criterion_06_bipartite_plus_edge():
    t0 = time.perf_counter()
    bad = []
    for k in range(3, 11):
        tr = run(complete_bipartite_plus_edge(k).graph, Cycle(k))
        if tr.tau > 2 or not tr.final.is_complete():
            bad.append((k, tr.tau))
    record(6, not bad, time.perf_counter() - t0, 1, f"k=3..10, failures {bad}")


def _atlas_max_tau(n: int) -> int:
    # every graph on n vertices up to isomorphism, run with naive path enumeration
    best = 0
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n:
            best = max(best, len(cycle_process(g, 3)))
    return best


def test_criterion_07_exhaustive_ground_truth():
    t0 = time.perf_counter()
    rows = []
    for n in range(3, 8):
        res = max_tau_exhaustive(n, Cycle(3), workers=os.cpu_count() or 1)
        rows.append((n, res.max_tau, _atlas_max_tau(n), res.enumerated))
    ok = all(a == b for _, a, b, _ in rows) and all(a == 3 for n, a, _, _ in rows if n in (6, 7))
    ok = ok and rows[-1][3] == 2**21
    record(7, ok, time.perf_counter() - t0, 600, f"(n, search, oracle, graphs) = {rows}")


def test_criterion_08_path_set_machinery():
    t0 = time.perf_counter()
    failures = []
    for n, k in itertools.product(range(20, 121), (3, 4, 5, 6)):
        rep = check_path_lemmas(n, k, 4)
        if rep.verdict != "pass":
            failures.append((n, k, rep.witnesses[:1]))
    for i, k in itertools.product(range(3, 7), range(3, 10)):
        rep = check_interval_lemma(k, i)
        if rep.verdict != "pass":
            failures.append(("interval", k, i))
    record(8, not failures, time.perf_counter() - t0, 120, f"404 path runs + 28 interval checks, failures {failures[:3]}")


def test_criterion_09_union_of_cycles():
    t0 = time.perf_counter()
    rows, ok = [], True
    for n in (30, 50, 100):
        rep = check_multiple_cycles([4, 3], n, samples=20, seed=n)
        lower = ceil_log(3, n - 5)
        ok &= rep.verdict == "pass" and rep.params["witness_tau"] >= lower
        rows.append((n, rep.params["witness_tau"], lower, rep.params["sample_max_tau"]))
    assert cycle_union_witness([4, 3], 30).n == 30
    record(9, ok, time.perf_counter() - t0, 300, f"(n, witness tau, lower bound, sample max) = {rows}; upper bound log3(n)+1024")


def test_criterion_10_closing_matches_counting():
    t0 = time.perf_counter()
    rules = [Cycle(3), Cycle(4), Generic(CycleUnion((4, 3)).as_graph())]
    mismatches, graphs = [], 0
    for n in range(1, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for code in range(1 << len(pairs)):
            g = graph_from_code(n, code)
            graphs += 1
            for H in rules:
                base = count_copies(g, H)
                want = [e for e in pairs if not g.has_edge(*e) and count_copies(g.with_edges([e]), H) > base]
                if closing_edges(g, H) != want:
                    mismatches.append((n, code, H.spec))
    record(10, not mismatches, time.perf_counter() - t0, 300, f"{graphs} labelled graphs x 3 rules, mismatches {mismatches[:3]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
