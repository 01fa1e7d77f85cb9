"""Command-line entry point: ``hboot <command> ...``.

JSON goes to standard output with a fixed key order; a one-line human summary
goes to standard error (``--format quiet`` keeps only the summary).  Exit codes: 0 success, 1 a verification failed,
2 bad input, 3 size guard hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from hboot.constructions import ConstructionError, parse_graph
from hboot.graph import GraphError, graph6_encode
from hboot.numtheory import DomainError, SemigroupView, predict_ell, predict_M, predict_r, window
from hboot.patterns import PatternError, SizeGuardError, parse_rule
from hboot.process import RoundLimitError, run
from hboot import search, verify

SCHEMA = 1
EXIT_FAIL, EXIT_PARSE, EXIT_GUARD = 1, 2, 3


class InputError(Exception):
    pass


def _emit(payload: dict, summary: str, fmt: str, csv_text: str | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        sys.stdout.write(csv_text if csv_text is not None else _flat_csv(payload))
    print(summary, file=sys.stderr)


def _flat_csv(payload: dict) -> str:
    keys = [k for k, v in payload.items() if not isinstance(v, (list, dict))]
    return ",".join(keys) + "\n" + ",".join(str(payload[k]) for k in keys) + "\n"


def _rule(text: str):
    try:
        return parse_rule(text)
    except PatternError as exc:
        raise InputError(str(exc)) from exc


def _graph(text: str):
    try:
        return parse_graph(text)
    except (ConstructionError, GraphError) as exc:
        raise InputError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


# -- commands ---------------------------------------------------------------------


def cmd_run(args) -> int:
    H = _rule(args.rule)
    named = _graph(args.graph)
    trace = run(named.graph, H, args.max_rounds)
    payload = trace.to_dict()
    rows = ["round,u,v"] + [f"{i},{u},{v}" for i, added in enumerate(trace.rounds, 1) for u, v in added.tolist()]
    _emit(payload, f"{named.name} under {H.spec}: tau={trace.tau}", args.format, "\n".join(rows) + "\n")
    return 0


def cmd_predict(args) -> int:
    try:
        r = predict_r(args.n, args.k)
        payload = {"schema": SCHEMA, "n": args.n, "k": args.k, "r": r, "M": predict_M(args.n, args.k), "window": list(window(args.k, r))}
        if args.k % 2 == 0 and r >= 2:
            payload["ell"] = predict_ell(args.k, r)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    _emit(payload, f"r({args.n},{args.k}) = {payload['r']}", args.format)
    return 0


def cmd_frobenius(args) -> int:
    view = SemigroupView(args.x, args.y)
    try:
        F = view.frobenius
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    payload = {"schema": SCHEMA, "x": args.x, "y": args.y, "frobenius": F}
    if args.gaps:
        payload["gaps"] = view.gaps()
    _emit(payload, str(F), args.format)
    return 0


def cmd_construct(args) -> int:
    named = _graph(args.spec)
    g = named.graph
    payload = {
        "schema": SCHEMA,
        "name": named.name,
        "n": g.n,
        "m": g.edge_count,
        "graph6": graph6_encode(g),
        "labels": dict(sorted(named.labels.items(), key=lambda kv: kv[1])),
    }
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload["graph6"] + "\n")
    _emit(payload, f"{named.name}: n={g.n} m={g.edge_count}", args.format)
    return 0


def cmd_search(args) -> int:
    if args.mode == "chord":
        if args.k is None:
            raise InputError("chord sweep needs --k")
        table = search.chord_sweep(args.k)
        payload = {"schema": SCHEMA, **table}
        _emit(payload, f"k={args.k}: best offset {table['best_offset']} gives tau={table['max_tau']}", args.format)
        return 0
    if args.rule is None or args.n is None:
        raise InputError(f"{args.mode} search needs --rule and --n")
    H = _rule(args.rule)
    if args.mode == "exhaustive":
        res = search.max_tau_exhaustive(
            args.n, H, connected_only=args.connected, dedup=args.iso, workers=args.workers, cache=args.cache
        )
    else:
        res = search.max_tau_sampled(args.n, H, args.samples, args.seed, family=args.family)
    payload = {"schema": SCHEMA, **res.to_dict()}
    _emit(payload, f"max tau over {res.enumerated} graphs on {args.n} vertices: {res.max_tau}", args.format)
    return 0


def _verify_call(args):
    s = args.suite
    if s == "battery":
        return verify.default_battery(args.seed)
    if s == "theorem-cycles":
        return [verify.check_theorem_cycles(args.k, args.r, samples=args.samples, seed=args.seed)]
    if s == "path-lemmas":
        return [verify.check_path_lemmas(args.n, args.k, args.max_i)]
    if s == "path-props":
        return [verify.check_path_props(args.n, args.k)]
    if s == "small-lemmas":
        return [verify.check_small_lemmas(args.k, seed=args.seed, samples=args.samples)]
    if s == "multiple-cycles":
        return [verify.check_multiple_cycles(_int_list(args.ks), args.n, samples=args.samples, seed=args.seed)]
    if s == "interval":
        return [verify.check_interval_lemma(args.k, args.i)]
    if s == "pdelta":
        return [verify.check_pdelta_lemmas(args.k, args.ell)]
    if s == "distance":
        return [verify.check_distance_lemma(_graph(args.graph).graph, args.k, args.max_i)]
    if s == "bipartite":
        return [verify.check_bipartite_preservation(_graph(args.graph).graph, args.k)]
    if s == "union":
        return [verify.check_union_decomposition([_graph(g).graph for g in args.graphs], _rule(args.rule))]
    if s == "monotone":
        return [
            verify.check_monotone_embedding(
                _graph(args.graph).graph, _graph(args.target).graph, _rule(args.rule), _int_list(args.map)
            )
        ]
    raise InputError(f"unknown suite {s!r}")


_SUITE_NEEDS = {
    "theorem-cycles": ("k", "r"),
    "path-lemmas": ("n", "k"),
    "path-props": ("n", "k"),
    "small-lemmas": ("k",),
    "multiple-cycles": ("ks", "n"),
    "interval": ("k", "i"),
    "pdelta": ("k", "ell"),
    "distance": ("graph", "k"),
    "bipartite": ("graph", "k"),
    "union": ("graphs", "rule"),
    "monotone": ("graph", "target", "rule", "map"),
}


def cmd_verify(args) -> int:
    missing = [f"--{a.replace('_', '-')}" for a in _SUITE_NEEDS.get(args.suite, ()) if getattr(args, a) is None]
    if missing:
        raise InputError(f"suite {args.suite} needs {' '.join(missing)}")
    try:
        reports = _verify_call(args)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    dicts = [r.to_dict() for r in reports]
    if not args.timings:
        for d in dicts:
            d["cost"].pop("seconds", None)
    payload = {"schema": SCHEMA, "reports": dicts}
    verdicts = [r.verdict for r in reports]
    summary = ", ".join(f"{r.statement}: {r.verdict}" for r in reports)
    _emit(payload, summary, args.format, verify.reports_to_csv(reports))
    return EXIT_FAIL if "fail" in verdicts else 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "quiet"), default="json")
    common.add_argument("--seed", type=int, default=0, help="single seed for every random choice")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cache", default=None, help=f"JSON-lines result cache (default: ${search.CACHE_ENV})")

    p = argparse.ArgumentParser(prog="hboot", description="Cycle bootstrap processes: simulate, predict, search, verify.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a process and print its trace")
    r.add_argument("--rule", required=True, help="cycle:K | union:K1,K2,.. | generic:<graph6>")
    r.add_argument("--graph", required=True, help="e.g. path:58, pdelta:13, g6:<graph6>, file:<path>")
    r.add_argument("--max-rounds", type=int, default=None)
    r.set_defaults(func=cmd_run)

    q = sub.add_parser("predict", parents=[common], help="closed-form running time")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(func=cmd_predict)

    f = sub.add_parser("frobenius", parents=[common], help="Frobenius number of two coprime integers")
    f.add_argument("x", type=int)
    f.add_argument("y", type=int)
    f.add_argument("--gaps", action="store_true", help="also list the non-representable numbers")
    f.set_defaults(func=cmd_frobenius)

    c = sub.add_parser("construct", parents=[common], help="build a named graph")
    c.add_argument("spec")
    c.add_argument("--output", "-o", help="also write the graph6 line to this file")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", parents=[common], help="maximum running time by enumeration or sampling")
    s.add_argument("mode", choices=("exhaustive", "sampled", "chord"))
    s.add_argument("--rule")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int, help="cycle length for the chord sweep")
    s.add_argument("--connected", action="store_true")
    s.add_argument("--iso", action="store_true", help="enumerate isomorphism classes")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--family", choices=search.SAMPLE_FAMILIES, default="gnp")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=["battery", *_SUITE_NEEDS])
    for name in ("n", "k", "r", "i", "ell"):
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--max-i", type=int, default=4)
    v.add_argument("--ks")
    v.add_argument("--graph")
    v.add_argument("--graphs", nargs="+")
    v.add_argument("--target")
    v.add_argument("--rule")
    v.add_argument("--map")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds in the JSON")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except RoundLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
