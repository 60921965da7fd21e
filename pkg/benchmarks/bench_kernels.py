#!/usr/bin/env python3
"""Benchmark the grid-scan kernels: compiled extension vs pure Python.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import random
import time

from orbitlab._kernels import available_backends


def timed(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_nearest(backend, grid, cloud, dim, repeat):
    return timed(lambda: backend.nearest_distances(grid, cloud, dim), repeat)


def bench_spiral(backend, count, repeat):
    return timed(
        lambda: backend.spiral_min_scan(math.log(2.0), 1.0, -1.0, 0.0, -20.0, 40.0 / count, count),
        repeat,
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    rng = random.Random(0)
    dim = 2
    grid = [rng.uniform(-2, 2) for _ in range(400 * dim)]
    cloud = [rng.uniform(-2, 2) for _ in range(20000 * dim)]
    spiral_count = 2_000_000

    print(f"backends: {', '.join(sorted(backends))}")
    print(f"{'kernel':<22}{'backend':<10}{'best time':>12}")
    results = {}
    for name in sorted(backends):
        t, out = bench_nearest(backends[name], grid, cloud, dim, args.repeat)
        results[("nearest", name)] = (t, out)
        print(f"{'nearest_distances':<22}{name:<10}{t * 1e3:>10.1f}ms")
    for name in sorted(backends):
        t, out = bench_spiral(backends[name], spiral_count, args.repeat)
        results[("spiral", name)] = (t, out)
        print(f"{'spiral_min_scan':<22}{name:<10}{t * 1e3:>10.1f}ms")

    if "compiled" in backends:
        for kernel in ("nearest", "spiral"):
            t_py, out_py = results[(kernel, "python")]
            t_c, out_c = results[(kernel, "compiled")]
            match = "outputs identical" if out_py == out_c else "OUTPUTS DIFFER"
            print(f"{kernel}: compiled is {t_py / t_c:.1f}x faster ({match})")


if __name__ == "__main__":
    main()
