import json

import numpy as np
import pytest

from hboot.constructions import complete, complete_bipartite, cycle, path, random_connected
from hboot.graph import all_distances
from hboot.patterns import Cycle
from hboot.process import run
from hboot import verify
from hboot.verify import (
    FAIL,
    NA,
    PASS,
    Report,
    check_bipartite_preservation,
    check_distance_lemma,
    check_interval_lemma,
    check_monotone_embedding,
    check_multiple_cycles,
    check_path_lemmas,
    check_path_props,
    check_pdelta_lemmas,
    check_small_lemmas,
    check_theorem_cycles,
    check_union_decomposition,
    default_battery,
    reports_to_csv,
    reports_to_json,
    skip_round,
)


def _strip(rep):
    d = rep.to_dict()
    d["cost"].pop("seconds", None)
    return d


def test_distance_lemma_examples():
    assert check_distance_lemma(path(50).graph, 3, 4).verdict == PASS
    g = random_connected(40, 0.05, np.random.default_rng(1))
    assert check_distance_lemma(g, 5, 3).verdict == PASS


def test_tampered_trace_is_caught_and_witness_replays():
    trace = run(path(50).graph, Cycle(3))
    bad = skip_round(trace, 1)
    rep = check_distance_lemma(trace.initial, 3, 3, trace=bad)
    assert rep.verdict == FAIL and rep.witnesses
    w = rep.witnesses[0]
    D0 = all_distances(bad.initial)
    Di = all_distances(list(bad.graphs())[w["i"]])
    assert D0[w["x"], w["y"]] == w["d0"] and Di[w["x"], w["y"]] == w["di"]
    q = 2 ** w["i"]
    broken = {
        "lower": w["d0"] > q * w["di"],
        "upper": w["di"] > w["d0"] // q + 1,
        "divisible": w["d0"] % q == 0 and w["di"] > w["d0"] // q,
    }
    assert broken[w["bound"]]
    with pytest.raises(ValueError):
        skip_round(trace, trace.tau)


def test_union_decomposition_examples():
    assert check_union_decomposition([path(10).graph, cycle(5).graph], Cycle(5)).verdict == PASS
    assert check_union_decomposition([path(4).graph], Cycle(3)).verdict == PASS
    rep = check_union_decomposition([cycle(3).graph, cycle(3).graph], Cycle(3))
    assert rep.verdict == PASS and rep.params["tau"] == 0


def test_bipartite_examples():
    assert check_bipartite_preservation(path(20).graph, 4).verdict == PASS
    assert check_bipartite_preservation(cycle(6).graph, 6).verdict == PASS
    assert check_bipartite_preservation(complete_bipartite(3, 3).graph, 4).verdict == PASS
    assert check_bipartite_preservation(cycle(5).graph, 4).verdict == NA
    assert check_bipartite_preservation(path(20).graph, 5).verdict == NA


@pytest.mark.parametrize("k", [3, 4, 5])
def test_small_lemmas(k):
    rep = check_small_lemmas(k, samples=6)
    assert rep.verdict == PASS and rep.cost["graphs"] > 0


@pytest.mark.parametrize("n,k", [(100, 5), (30, 4), (20, 3)])
def test_path_lemmas_examples(n, k):
    assert check_path_lemmas(n, k, 3 if k > 3 else 4).verdict == PASS


def test_path_props_examples():
    rep = check_path_props(57, 5)
    assert rep.verdict == PASS and rep.params["rho"] == 3
    rep = check_path_props(24, 4)
    assert rep.verdict == PASS and rep.params["rho"] == 3
    assert check_path_props(8, 5).verdict == NA


def test_interval_lemma():
    assert check_interval_lemma(5, 4).verdict == PASS
    assert check_interval_lemma(5, 2).verdict == NA


def test_pdelta_lemmas():
    assert check_pdelta_lemmas(4, 13).verdict == PASS
    assert check_pdelta_lemmas(6, 7).verdict == PASS
    assert check_pdelta_lemmas(5, 7).verdict == NA


def test_theorem_cycles_examples():
    rep = check_theorem_cycles(5, 4, samples=6)
    assert rep.verdict == PASS and rep.params["n"] == 58
    rep = check_theorem_cycles(4, 4, samples=6)
    assert rep.verdict == PASS and rep.params["n"] == 16
    rep = check_theorem_cycles(3, 6, samples=6)
    assert rep.verdict == PASS and rep.params["n"] == 34


def test_informational_flag():
    # witness on 60 vertices, below 6^3
    assert check_theorem_cycles(6, 4, samples=0).informational
    assert not check_theorem_cycles(5, 4, samples=0).informational


def test_multiple_cycles_examples():
    rep = check_multiple_cycles([4, 3], 50, samples=3)
    assert rep.verdict == PASS and rep.params["witness_tau"] >= 4
    assert check_multiple_cycles([3, 3], 40, samples=3).verdict == PASS


def test_monotone_embedding_examples():
    assert check_monotone_embedding(path(5).graph, path(9).graph, Cycle(3), range(5)).verdict == PASS
    assert check_monotone_embedding(cycle(4).graph, complete(4).graph, Cycle(4), range(4)).verdict == PASS
    g = random_connected(12, 0.2, np.random.default_rng(0))
    assert check_monotone_embedding(g, g, Cycle(4), range(12)).verdict == PASS
    assert check_monotone_embedding(path(3).graph, path(3).graph, Cycle(3), [0, 0, 1]).verdict == NA
    assert check_monotone_embedding(path(3).graph, path(3).graph, Cycle(3), [0, 2, 1]).verdict == NA


def test_failing_report_carries_witness():
    rep = Report("x", {})
    rep.fail(a=1)
    assert rep.verdict == FAIL and rep.witnesses == [{"a": 1}]


def test_serialisation():
    reps = [check_interval_lemma(4, 3), check_path_props(8, 5)]
    data = json.loads(reports_to_json(reps))
    assert data["schema"] == 1
    assert [d["statement"] for d in data["reports"]] == ["interval-in-constrained-set", "path-saturation"]
    lines = reports_to_csv(reps).strip().splitlines()
    assert lines[0].split(",")[:1] == ["statement"] and len(lines) == 3


def test_battery_deterministic_and_green():
    a = default_battery(3)
    b = default_battery(3)
    assert [_strip(r) for r in a] == [_strip(r) for r in b]
    assert all(r.verdict == PASS for r in a), [r.statement for r in a if r.verdict != PASS]
    assert set(verify.SUITES) >= {"distance", "theorem-cycles", "multiple-cycles"}
