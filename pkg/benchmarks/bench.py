#!/usr/bin/env python3
"""Timing comparison of the two propagation backends.

Measures the raw kernel (one energy propagation, with and without the
dense record) and a full ground-state solve, for the compiled extension
and the pure-Python mirror.  The two backends are step-for-step
identical, so the ratio is pure interpreter overhead.

Usage: python3 benchmarks/bench.py [--repeats N]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

from diracomp import kernel
from diracomp.model import FAMILIES, make_potential

KERNEL_CASES = [
    ("1D exponential well", ("exponential", dict(beta=0.9, b=0.5)),
     0.0, 1.0, 0.49, 1, 0.0, (1.0, 0.0), 12.0),
    ("deep-sector well", ("woods_saxon", dict(v=4.0, R=2.0, a=1.2)),
     -4.5, 1.0, 0.62, 0, 1e-4, (1.0, -1e-4), 15.0),
    ("oscillatory well", ("osc_cubic", dict(alpha=3.4, a=2.04, u=7.0,
                                            v=0.4, kappa=7.0, s=2.04)),
     -1.0, 1.0, 0.9943, 0, 1e-4, (1e-4, -1e-8), 8.0),
]

SOLVE_CASES = {
    "1D exponential well": {
        "mass": 1.0, "geometry": {"kind": "one_dim"},
        "potential": {"family": "exponential",
                      "params": {"beta": 0.9, "b": 0.5}}},
    "deep-sector well": {
        "mass": 1.0, "geometry": {"kind": "radial", "d": 8, "j": 1.5,
                                  "tau": -1},
        "potential": {"family": "woods_saxon",
                      "params": {"v": 4.0, "R": 2.0, "a": 1.2}}},
}


def time_best(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(repeats: int) -> None:
    backends = kernel.available_backends()
    print(f"available backends: {', '.join(backends)}")
    print(f"active backend: {kernel.BACKEND}")
    print()
    header = (f"{'kernel propagation':<24} {'record':<7} {'steps':>7} "
              + "".join(f"{name:>12}" for name in backends)
              + (f"{'speedup':>9}" if len(backends) == 2 else ""))
    print(header)
    print("-" * len(header))
    for name, (family, params), kd, mass, e, one_dim, r0, y0, r1 \
            in KERNEL_CASES:
        pot = make_potential(family, **params)
        code = FAMILIES[family].code
        for record in (0, 1):
            times = {}
            steps = 0
            for bname, impl in backends.items():
                def run(impl=impl):
                    return impl.propagate(code, pot.params, kd, mass, e,
                                          one_dim, r0, y0[0], y0[1], r1,
                                          1e-9, 200_000, record)
                steps = run()[3]
                times[bname] = time_best(run, repeats)
            row = (f"{name:<24} {'yes' if record else 'no':<7} {steps:>7} "
                   + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends))
            if len(times) == 2:
                row += f"{times['python'] / times['compiled']:>8.1f}x"
            print(row)
    print()


def _solve_seconds(repeats: int) -> dict[str, float]:
    from diracomp.cli import _parse_geometry, _parse_potential
    from diracomp.model import Problem
    from diracomp.solver import solve_ground

    out = {}
    for name, doc in SOLVE_CASES.items():
        problem = Problem(doc["mass"], _parse_geometry(doc["geometry"]),
                          _parse_potential(doc["potential"]))
        out[name] = time_best(lambda: solve_ground(problem), repeats)
    return out


def bench_solve(repeats: int) -> None:
    mine = _solve_seconds(repeats)

    env = dict(os.environ)
    other = "python" if kernel.BACKEND == "compiled" else "compiled"
    if other == "python":
        env["DIRACOMP_PURE_PYTHON"] = "1"
    else:
        env.pop("DIRACOMP_PURE_PYTHON", None)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--solve-inner",
         str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    theirs = json.loads(proc.stdout)

    by_backend = {kernel.BACKEND: mine, other: theirs}
    names = ("compiled", "python") if "compiled" in by_backend \
        else tuple(by_backend)
    header = (f"{'full ground-state solve':<24} "
              + "".join(f"{n:>12}" for n in names)
              + (f"{'speedup':>9}" if len(names) == 2 else ""))
    print(header)
    print("-" * len(header))
    for case in SOLVE_CASES:
        row = f"{case:<24} " + "".join(
            f"{by_backend[n][case] * 1e3:>10.0f}ms" for n in names)
        if len(names) == 2:
            row += (f"{by_backend['python'][case] / by_backend['compiled'][case]:>8.1f}x")
        print(row)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--solve-inner", type=int, default=None,
                    help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.solve_inner is not None:
        print(json.dumps(_solve_seconds(args.solve_inner)))
        return
    bench_kernel(args.repeats)
    bench_solve(max(2, args.repeats // 2))


if __name__ == "__main__":
    main()
