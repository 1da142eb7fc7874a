#!/usr/bin/env python3
"""Benchmark the compiled kernels against the plain-Python path.

Two workloads:

* micro: the per-node primitives (simplify + chain scan) on a mid-size
  axis-link diagram, repeated;
* engine: full a_3 evaluations over squared exchange families, the dominant
  cost of the family experiments.

The compiled path pays a one-time JIT cost which is reported separately and
excluded from the steady-state timing.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from braidax import SkeinEngine, axis_link_diagram, canonical_odd_knot_braid
from braidax.words import cyclic_free_reduce, family_member, square
from braidax.kernels import NUMBA_AVAILABLE, get_kernels


def family_diagrams(ns):
    out = []
    for n in ns:
        form = canonical_odd_knot_braid(n)
        for m in (-1, 0, 1):
            w = cyclic_free_reduce(square(family_member(form, m)))
            out.append(axis_link_diagram(w))
    return out


def time_engine(flavor, diagrams, repeats):
    kernels = get_kernels(flavor)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        engine = SkeinEngine(kernels)
        for d in diagrams:
            engine.truncated(d, 3)
        best = min(best, time.perf_counter() - t0)
    return best


def time_micro(flavor, diagram, iterations):
    kernels = get_kernels(flavor)
    conn0, sign0 = diagram.arrays()
    t0 = time.perf_counter()
    for _ in range(iterations):
        conn, sign = conn0.copy(), sign0.copy()
        kernels.reidemeister_simplify(conn, sign)
        conn, sign = kernels.compact(conn, sign)
        labels, ncomp, starts = kernels.trace_inports(conn)
        kernels.chain_scan(conn, sign, starts)
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workload")
    args = parser.parse_args()

    ns = (5, 7) if args.quick else (5, 7, 9)
    iters = 50 if args.quick else 300
    repeats = 2 if args.quick else 3

    diagrams = family_diagrams(ns)
    big = max(diagrams, key=lambda d: d.crossings)
    print(f"workload: {len(diagrams)} axis links, up to {big.crossings} crossings")

    flavors = ["python"]
    if NUMBA_AVAILABLE:
        t0 = time.perf_counter()
        time_engine("numba", diagrams[:1], 1)  # warm the JIT
        print(f"numba jit warmup: {time.perf_counter() - t0:.1f}s (one-time)")
        flavors.append("numba")
    else:
        print("numba unavailable; timing the python path only")

    results = {}
    for flavor in flavors:
        micro = time_micro(flavor, big, iters)
        engine = time_engine(flavor, diagrams, repeats)
        results[flavor] = (micro, engine)
        print(
            f"{flavor:>7}:  micro {micro * 1e3 / iters:8.3f} ms/iter"
            f"   engine {engine:8.3f} s/pass"
        )
    if len(results) == 2:
        pm, pe = results["python"]
        nm, ne = results["numba"]
        print(f"speedup:  micro {pm / nm:6.1f}x   engine {pe / ne:6.1f}x")


if __name__ == "__main__":
    main()
