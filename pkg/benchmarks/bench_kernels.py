#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times each kernel on analysis-sized inputs plus one end-to-end rough-Cauchy
check per backend.  Usage:

    python benchmarks/bench_kernels.py [--n 2000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from roughcone import kernels
from roughcone.analysis import EpsilonSchedule, Roughness, is_r_cauchy
from roughcone.metrics import builtin_space
from roughcone.sequences import BoundedWalk


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n, repeat):
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(n, 2))
    rho = np.abs(rng.normal(size=(n, n)))
    T = rng.normal(size=(n, n))
    gaps = rng.normal(size=(n * 8, 4))
    scale = np.abs(rng.normal(size=4)) + 0.1
    base = rng.normal(size=(n * 8, 3))
    w = np.array([2.0, 0.3, -0.2])
    c0 = rng.normal(size=2)
    c1 = rng.normal(size=2)

    cases = [
        ("pairwise_distance (euclidean)",
         lambda impl: kernels.pairwise_distance(pts, kernels.EUCLIDEAN, impl=impl)),
        ("pairwise_distance (sup)",
         lambda impl: kernels.pairwise_distance(pts, kernels.SUP, impl=impl)),
        ("affine_row_max",
         lambda impl: kernels.affine_row_max(rho, c0, c1, impl=impl)),
        ("facet_crit",
         lambda impl: kernels.facet_crit(gaps, scale, 0.0, impl=impl)),
        ("soc_crit",
         lambda impl: kernels.soc_crit(base, w, 0.0, impl=impl)),
        ("pair_min_index_max",
         lambda impl: kernels.pair_min_index_max(T, impl=impl)),
    ]

    backends = kernels.available_backends()
    impls = {name: kernels.get_backend(name) for name in backends}

    print("kernel benchmarks (N = %d, best of %d)" % (n, repeat))
    header = "%-32s" % "kernel" + "".join("%14s" % b for b in backends)
    if len(backends) == 2:
        header += "%10s" % "speedup"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        times = [timeit(lambda b=impls[b]: fn(b), repeat) for b in backends]
        row = "%-32s" % name + "".join("%12.2f ms" % (t * 1e3) for t in times)
        if len(times) == 2 and times[1] > 0:
            row += "%9.1fx" % (times[0] / times[1])
        print(row)
    return backends, impls


def bench_end_to_end(n, repeat, backends, impls):
    spec = builtin_space("lifted", q=1, base="euclidean", witness=(1.0, 1.0))
    seq = BoundedWalk(0.0, 0.25, 1.0, seed=3)
    sched = EpsilonSchedule(horizon=n)
    rough = Roughness.interior((2.1, 2.1))

    print()
    print("end-to-end rough-Cauchy check (horizon %d, best of %d)" % (n, repeat))
    saved = kernels.BACKEND
    try:
        for name in backends:
            kernels.set_backend(name)
            t = timeit(lambda: is_r_cauchy(spec, seq, rough, sched), repeat)
            print("%-32s%12.2f ms" % (name, t * 1e3))
    finally:
        kernels.set_backend(saved)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends, impls = bench_kernels(args.n, args.repeat)
    bench_end_to_end(args.n, args.repeat, backends, impls)


if __name__ == "__main__":
    main()
