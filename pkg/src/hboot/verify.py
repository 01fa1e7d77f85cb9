"""Instance-level checks of the structural claims about cycle processes.

Each check returns a :class:`Report`.  A failing report always carries at
least one witness record that can be replayed with :mod:`hboot.process`.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from hboot.constructions import (
    complete_bipartite_plus_edge,
    cycle_union_witness,
    lower_bound_witness,
    path,
    path_triangle,
    random_connected,
    random_connected_bipartite,
    sampling_densities,
)
from hboot.graph import Graph, all_distances, bipartition, disjoint_union, graph6_encode, is_connected
from hboot import kernels
from hboot.numtheory import F_cycle, Fprime_cycle, in_A, in_A_prime, predict_M, set_A_prime, sumset
from hboot.patterns import Cycle, CycleUnion, Pattern, exists_path_of_exact_length
from hboot.process import ProcessTrace, difference_set, run
from hboot.search import nonisomorphic_graphs

PASS, FAIL, NA = "pass", "fail", "not-applicable"
MAX_WITNESSES = 20


@dataclass
class Report:
    statement: str
    params: dict
    verdict: str = PASS
    witnesses: list[dict] = field(default_factory=list)
    cost: dict = field(default_factory=dict)
    informational: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def fail(self, **witness) -> None:
        self.verdict = FAIL
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return asdict(self)


def _timed(statement: str):
    def deco(fn: Callable[..., Report]):
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            rep = fn(*args, **kwargs)
            rep.cost["seconds"] = round(time.perf_counter() - t0, 6)
            return rep

        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        wrapper.statement = statement
        return wrapper

    return deco


def reports_to_json(reports: Sequence[Report]) -> str:
    return json.dumps({"schema": 1, "reports": [r.to_dict() for r in reports]}, indent=2)


def reports_to_csv(reports: Sequence[Report]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statement", "params", "verdict", "seconds"])
    for r in reports:
        w.writerow([r.statement, json.dumps(r.params, sort_keys=True), r.verdict, r.cost.get("seconds", "")])
    return buf.getvalue()


def skip_round(trace: ProcessTrace, i: int) -> ProcessTrace:
    """Corrupted copy of ``trace`` with rounds ``i`` and ``i + 1`` merged.

    Used as a negative control: the merged trace jumps two rounds at once.
    """
    if not 1 <= i < trace.tau:
        raise ValueError(f"cannot merge round {i} of a {trace.tau}-round trace")
    rounds = list(trace.rounds)
    merged = np.concatenate([rounds[i - 1], rounds[i]])
    rounds[i - 1 : i + 1] = [merged]
    return ProcessTrace(trace.initial, trace.rule, tuple(rounds), trace.final)


# -- distances and components ----------------------------------------------------------


@_timed("distance-contraction")
def check_distance_lemma(G: Graph, k: int, max_i: int, trace: ProcessTrace | None = None) -> Report:
    """Distances shrink by at most a factor ``k-1`` per round and at least as
    fast as jumping along ``(k-1)``-step shortcuts."""
    rep = Report("distance-contraction", {"n": G.n, "k": k, "max_i": max_i})
    if trace is None:
        trace = run(G, Cycle(k))
    D0 = all_distances(trace.initial)
    reach = D0 >= 0
    np.fill_diagonal(reach, False)
    graphs = list(trace.graphs())
    for i in range(1, max_i + 1):
        Di = all_distances(graphs[min(i, len(graphs) - 1)])
        q = (k - 1) ** i
        d0, di = D0[reach], Di[reach]
        lower = d0 > q * di
        upper = di > d0 // q + k - 2
        exact = (d0 % q == 0) & (di > d0 // q)
        for name, bad in (("lower", lower), ("upper", upper), ("divisible", exact)):
            xs, ys = np.nonzero(reach)
            for idx in np.flatnonzero(bad)[:5]:
                rep.fail(i=i, x=int(xs[idx]), y=int(ys[idx]), d0=int(d0[idx]), di=int(di[idx]), bound=name)
    return rep


@_timed("component-decomposition")
def check_union_decomposition(Gs: Sequence[Graph], H: Pattern) -> Report:
    """The process on a disjoint union runs independently on each part."""
    rep = Report("component-decomposition", {"sizes": [g.n for g in Gs], "rule": H.spec})
    whole = run(disjoint_union(*Gs), H)
    parts = [run(g, H) for g in Gs]
    expect_final = disjoint_union(*(p.final for p in parts))
    expect_tau = max((p.tau for p in parts), default=0)
    if whole.final != expect_final:
        extra = whole.final.edge_count - expect_final.edge_count
        rep.fail(kind="final", union_edges=whole.final.edge_count, parts_edges=expect_final.edge_count, difference=extra)
    if whole.tau != expect_tau:
        rep.fail(kind="tau", union_tau=whole.tau, max_part_tau=expect_tau)
    rep.params["tau"] = whole.tau
    return rep


@_timed("bipartite-preservation")
def check_bipartite_preservation(G: Graph, k: int) -> Report:
    """Even cycle rules never join two vertices on the same side."""
    rep = Report("bipartite-preservation", {"n": G.n, "k": k})
    side = bipartition(G)
    if k % 2 or side is None:
        rep.verdict = NA
        rep.notes.append("needs an even k and a bipartite start")
        return rep
    trace = run(G, Cycle(k))
    s = np.array(side)
    same = trace.final.matrix() & (s[:, None] == s[None, :])
    for x, y in np.argwhere(np.triu(same, 1))[:MAX_WITNESSES]:
        rep.fail(x=int(x), y=int(y), round=trace.birth(int(x), int(y)))
    return rep


# -- small-graph lemmas ------------------------------------------------------------------


def _has_k_cycle(G: Graph, k: int) -> bool:
    return any(kernels.path_exists(G.bits, u, v, k - 1) for u, v in G.edges())


def _on_k_cycle(G: Graph, x: int, k: int) -> bool:
    return any(exists_path_of_exact_length(G, x, y, k - 1, max_length=k) for y in G.neighbors(x))


def _small_battery(k: int, seed: int, samples: int) -> Iterable[Graph]:
    top = k + 4
    for n in range(k, min(top, 7) + 1):
        for g in nonisomorphic_graphs(n):
            if is_connected(g):
                yield g
    rng = np.random.default_rng(seed)
    for n in range(8, top + 1):
        for s in range(samples):
            p = (0.25, 0.4, 0.6)[s % 3]
            yield random_connected(n, p, rng)


@_timed("small-graph-lemmas")
def check_small_lemmas(k: int, seed: int = 0, samples: int = 30) -> Report:
    """Three facts about small connected starts.

    * ``K_{floor(k/2), ceil(k/2)}`` plus an edge inside a side becomes ``K_k``
      within two rounds.
    * With running time at least 2, every vertex is on a ``k``-cycle at time 2.
    * A connected start on more than ``k`` vertices containing a ``k``-cycle
      ends as a clique, or complete bipartite when ``k`` is even and the start
      is bipartite.
    """
    rep = Report("small-graph-lemmas", {"k": k, "seed": seed, "samples": samples})
    kb = run(complete_bipartite_plus_edge(k).graph, Cycle(k))
    if kb.tau > 2 or not kb.final.is_complete():
        rep.fail(kind="kab-plus-edge", tau=kb.tau, final_complete=kb.final.is_complete())
    checked = 0
    for g in _small_battery(k, seed, samples):
        checked += 1
        tr = run(g, Cycle(k))
        if tr.tau >= 2:
            g2 = tr.graph_at(2)
            missing = [x for x in range(g.n) if not _on_k_cycle(g2, x, k)]
            if missing:
                rep.fail(kind="cycle-at-time-two", graph=graph6_encode(g), vertices=missing)
        if g.n >= k + 1 and _has_k_cycle(g, k):
            side = bipartition(g)
            if k % 2 == 0 and side is not None:
                s = np.array(side)
                want = s[:, None] != s[None, :]
                ok = np.array_equal(tr.final.matrix(), want)
            else:
                ok = tr.final.is_complete()
            if not ok:
                rep.fail(kind="final-shape", graph=graph6_encode(g), bipartite=side is not None)
    rep.cost["graphs"] = checked
    return rep


# -- path set machinery -----------------------------------------------------------------


@_timed("path-difference-sets")
def check_path_lemmas(n_path: int, k: int, max_i: int) -> Report:
    """Difference-set relations for the ``C_k``-process on a path.

    Per round ``i``: every edge difference lies in ``A_i``; ``D_i`` grows and
    contains the ``(k-1)``-fold sumset of ``D_{i-1}`` (clipped); the odd
    numbers up to ``k`` are in ``D_2``; and the constrained set ``A'_i`` is in
    ``D_i``.  The last two need ``n_path >= 3(k-1)``.
    """
    rep = Report("path-difference-sets", {"n": n_path, "k": k, "max_i": max_i})
    trace = run(path(n_path).graph, Cycle(k))
    long_enough = n_path >= 3 * (k - 1)
    prev: set[int] | None = None
    top = n_path - 1
    for i in range(max_i + 1):
        Gi = trace.graph_at(i)
        D = difference_set(Gi)
        if i >= 1:
            edges = Gi.edge_array()
            for x, y in edges.tolist():
                for diff in (y - x, x - y):
                    if not in_A(diff, i, k):
                        rep.fail(kind="edge-difference", i=i, x=x, y=y, difference=diff)
        if prev is not None:
            if not prev <= D:
                rep.fail(kind="monotone", i=i, lost=sorted(prev - D)[:10])
            grown = {d for d in sumset(k - 1, prev) if d <= top} if prev else set()
            if not grown <= D:
                rep.fail(kind="sumset-iteration", i=i, missing=sorted(grown - D)[:10])
        if long_enough:
            if i == 2:
                odd = {d for d in range(1, k + 1, 2) if d <= top}
                if not odd <= D:
                    rep.fail(kind="odd-at-two", missing=sorted(odd - D))
            need = set_A_prime(i, k, top) if top >= 1 else set()
            if not need <= D:
                rep.fail(kind="constrained-set", i=i, missing=sorted(need - D)[:10])
        prev = D
    return rep


@_timed("interval-in-constrained-set")
def check_interval_lemma(k: int, i: int) -> Report:
    """``[(k-1)^(i-2) + 2(k-1), (k-1)^i]`` meets ``A_i`` only inside ``A'_i``."""
    rep = Report("interval-in-constrained-set", {"k": k, "i": i})
    if i < 3:
        rep.verdict = NA
        rep.notes.append("stated for i >= 3")
        return rep
    lo, hi = (k - 1) ** (i - 2) + 2 * (k - 1), (k - 1) ** i
    for d in range(lo, hi + 1):
        if in_A(d, i, k) and not in_A_prime(d, i, k):
            rep.fail(d=d)
    return rep


def _rho(n_path: int, k: int) -> int:
    gap = F_cycle(k) if k % 2 else Fprime_cycle(k)
    rho = 1
    while n_path > (k - 1) ** rho - gap:
        rho += 1
    return rho


@_timed("path-saturation")
def check_path_props(n_path: int, k: int) -> Report:
    """Round ``rho`` already shows the final shape of the process on ``P_n``:
    complete for odd ``k``, complete bipartite on the parity classes for even
    ``k``.  ``rho`` is the least integer with ``n <= (k-1)^rho - gap``."""
    rep = Report("path-saturation", {"n": n_path, "k": k})
    if n_path < 3 * (k - 1):
        rep.verdict = NA
        rep.notes.append("needs n >= 3(k-1)")
        return rep
    rho = _rho(n_path, k)
    rep.params["rho"] = rho
    trace = run(path(n_path).graph, Cycle(k))
    G = trace.graph_at(rho)
    if k % 2:
        ok = G.is_complete()
    else:
        par = np.arange(n_path) % 2
        ok = np.array_equal(G.matrix(), par[:, None] != par[None, :])
    if not ok:
        rep.fail(rho=rho, tau=trace.tau, edges=G.edge_count)
    if trace.tau > rho:
        rep.fail(rho=rho, tau=trace.tau, kind="late-round")
    return rep


# -- triangle-capped path --------------------------------------------------------------


@_timed("pdelta-edge-structure")
def check_pdelta_lemmas(k: int, ell: int, max_i: int | None = None) -> Report:
    """Edge bookkeeping on the triangle-capped path for even ``k``.

    Endpoints of even edges (equal level parity) stay at level at most
    ``(k-1)^i - 1`` at round ``i``; odd edges join levels differing by an
    element of ``A_i``.
    """
    rep = Report("pdelta-edge-structure", {"k": k, "ell": ell})
    if k % 2:
        rep.verdict = NA
        rep.notes.append("stated for even k")
        return rep
    named = path_triangle(ell)
    lv = np.array(named.levels)
    trace = run(named.graph, Cycle(k))
    last = trace.tau if max_i is None else min(max_i, trace.tau)
    for i, Gi in enumerate(trace.graphs()):
        if i > last:
            break
        e = Gi.edge_array()
        if len(e) == 0:
            continue
        a, b = lv[e[:, 0]], lv[e[:, 1]]
        even = (a - b) % 2 == 0
        if even.any():
            top = int(np.maximum(a[even], b[even]).max())
            if top > (k - 1) ** i - 1:
                rep.fail(kind="even-edge-reach", i=i, level=top, bound=(k - 1) ** i - 1)
        if i >= 1:
            for x, y in zip(a[~even].tolist(), b[~even].tolist()):
                if not in_A(x - y, i, k) or not in_A(y - x, i, k):
                    rep.fail(kind="odd-edge-difference", i=i, levels=[x, y])
    return rep


# -- theorems ---------------------------------------------------------------------------


def _samples_for(k: int, n: int, samples: int, seed: int) -> Iterable[tuple[str, Graph]]:
    rng = np.random.default_rng(seed)
    ps = sampling_densities(n)
    families = [("connected", random_connected)]
    if k % 2 == 0:
        families.append(("bipartite", random_connected_bipartite))
    for name, make in families:
        for s in range(samples):
            yield name, make(n, ps[s % len(ps)], rng)


@_timed("cycle-running-time")
def check_theorem_cycles(k: int, r: int, samples: int = 20, seed: int = 0) -> Report:
    """Lower-bound witness meets the closed form exactly; samples stay below it.

    Below ``n ~ k^(k/2)`` the closed form is not expected to be the maximum,
    so such runs are flagged informational.
    """
    rep = Report("cycle-running-time", {"k": k, "r": r, "samples": samples, "seed": seed})
    named, (x, y) = lower_bound_witness(k, r)
    n = named.n
    rep.params["n"] = n
    trace = run(named.graph, Cycle(k))
    born = trace.birth(x, y)
    if born != r:
        rep.fail(kind="witness-birth", pair=[x, y], birth=born, expected=r)
    if trace.tau != r:
        rep.fail(kind="witness-tau", tau=trace.tau, expected=r)
    M = predict_M(n, k)
    if M != r:
        rep.fail(kind="formula", n=n, formula=M, expected=r)
    worst = 0
    for fam, g in _samples_for(k, n, samples, seed):
        t = run(g, Cycle(k)).tau
        worst = max(worst, t)
        if t > r:
            rep.fail(kind="sample-exceeds", family=fam, graph=graph6_encode(g), tau=t, bound=r)
    rep.params["sample_max_tau"] = worst
    if n < k ** (k / 2):
        rep.informational = True
        rep.notes.append(f"n={n} is below k^(k/2); the closed form is not claimed to be the maximum here")
    return rep


def _below_log_plus(t: int, base: int, n: int, c: int) -> bool:
    """Exact test of ``t < log_base(n) + c``."""
    e = t - c
    return e < 0 or base**e < n


def _ceil_log_at_least(t: int, base: int, x: int) -> bool:
    """Exact test of ``t >= ceil(log_base(x))``."""
    return x <= 1 or base**t >= x


@_timed("multiple-cycles")
def check_multiple_cycles(ks: Sequence[int], n: int, samples: int = 10, seed: int = 0) -> Report:
    """Running time of a disjoint union of cycles is within additive constants
    of ``log_{k1-1}(n)``: the path-plus-cycles witness reaches the lower bound,
    sampled starts stay under the upper bound."""
    ks = sorted(ks, reverse=True)
    s = len(ks)
    rep = Report("multiple-cycles", {"ks": ks, "n": n, "samples": samples, "seed": seed})
    H = CycleUnion(tuple(ks))
    base = ks[0] - 1
    rest = sum(ks[1:])
    witness = cycle_union_witness(ks, n)
    t = run(witness.graph, H).tau
    rep.params["witness_tau"] = t
    target = n - rest - 2
    if not _ceil_log_at_least(t, base, target):
        rep.fail(kind="witness-lower", tau=t, log_argument=target)
    c = ks[0] ** 3 * s**4
    worst = 0
    for fam, g in _samples_for(3, n, samples, seed):
        tt = run(g, H).tau
        worst = max(worst, tt)
        if not _below_log_plus(tt, base, n, c):
            rep.fail(kind="sample-upper", graph=graph6_encode(g), tau=tt)
    rep.params["sample_max_tau"] = worst
    return rep


@_timed("monotone-embedding")
def check_monotone_embedding(G: Graph, G2: Graph, H: Pattern, phi: Sequence[int]) -> Report:
    """An injective homomorphism ``G -> G2`` stays one between the round-``i``
    graphs of the two processes."""
    rep = Report("monotone-embedding", {"n": G.n, "n2": G2.n, "rule": H.spec})
    phi = list(phi)
    if len(phi) != G.n or len(set(phi)) != G.n or any(not 0 <= v < G2.n for v in phi):
        rep.verdict = NA
        rep.notes.append("map is not injective into the target")
        return rep
    if any(not G2.has_edge(phi[u], phi[v]) for u, v in G.edges()):
        rep.verdict = NA
        rep.notes.append("map is not a homomorphism at time 0")
        return rep
    a, b = run(G, H), run(G2, H)
    for i in range(max(a.tau, b.tau) + 1):
        Ga, Gb = a.graph_at(i), b.graph_at(i)
        for u, v in Ga.edges():
            if not Gb.has_edge(phi[u], phi[v]):
                rep.fail(i=i, edge=[u, v], image=[phi[u], phi[v]])
    return rep


# -- battery ------------------------------------------------------------------------


def default_battery(seed: int = 0) -> list[Report]:
    """Every check at modest default parameters."""
    rng = np.random.default_rng(seed)
    out = [
        check_distance_lemma(path(50).graph, 3, 4),
        check_distance_lemma(random_connected(40, 0.05, rng), 5, 3),
        check_union_decomposition([path(10).graph, path(5).graph.with_edges([(0, 4)])], Cycle(5)),
        check_bipartite_preservation(path(20).graph, 4),
        check_small_lemmas(4, seed),
        check_small_lemmas(5, seed),
        check_path_lemmas(100, 5, 3),
        check_path_lemmas(30, 4, 3),
        check_interval_lemma(5, 4),
        check_path_props(57, 5),
        check_path_props(24, 4),
        check_pdelta_lemmas(4, 13),
        check_theorem_cycles(5, 4, seed=seed),
        check_theorem_cycles(4, 4, seed=seed),
        check_multiple_cycles([4, 3], 50, seed=seed),
        check_monotone_embedding(path(5).graph, path(9).graph, Cycle(3), range(5)),
    ]
    return out


SUITES: dict[str, Callable[..., Report]] = {
    "distance": check_distance_lemma,
    "union": check_union_decomposition,
    "bipartite": check_bipartite_preservation,
    "small-lemmas": check_small_lemmas,
    "path-lemmas": check_path_lemmas,
    "interval": check_interval_lemma,
    "path-props": check_path_props,
    "pdelta": check_pdelta_lemmas,
    "theorem-cycles": check_theorem_cycles,
    "multiple-cycles": check_multiple_cycles,
    "monotone": check_monotone_embedding,
}
