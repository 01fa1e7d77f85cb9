"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs on every available backend; results must agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hboot import kernels
from hboot.constructions import path, random_connected


def _closing_workload(mod):
    rng = np.random.default_rng(1)
    g = random_connected(120, 0.03, rng)
    out = []
    for L in (2, 3, 4):
        out.append(mod.closing_pairs_path(g.bits, L).tolist())
    out.append(mod.closing_pairs_path(path(400).graph.bits, 4).tolist())
    return out


def _path_workload(mod):
    g = random_connected(60, 0.05, np.random.default_rng(2))
    return [mod.path_exists(g.bits, u, (u * 7 + 3) % 60, 6) for u in range(60) if u != (u * 7 + 3) % 60]


def _scan_workload(mod):
    return mod.scan_codes(6, 3, 0, 1 << 15, False, 8)


WORKLOADS = {
    "closing pairs (n=120, 400)": _closing_workload,
    "path queries (n=60, L=6)": _path_workload,
    "labelled scan (n=6, C4)": _scan_workload,
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available_backends()
    print(f"backends: {', '.join(names)}")
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + (f"{'speedup':>10s}" if len(names) > 1 else ""))
    for label, work in WORKLOADS.items():
        times, results = {}, {}
        for name in names:
            mod = kernels.backend(name)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[name] = work(mod)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        line = f"{label:32s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if len(names) > 1:
            line += f"{times['python'] / times['compiled']:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
