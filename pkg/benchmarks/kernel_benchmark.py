#!/usr/bin/env python3
"""Benchmark the compiled integration kernels against the pure-Python fallback.

The per-step rotation integration is the hot loop of every fitness
evaluation, so this is the number that decides how long a search takes.

Usage: python benchmarks/kernel_benchmark.py [--samples 101] [--repeat 300]
"""

import argparse
import time

import numpy as np

from modalid import kernels


def time_backend(module, cx, cy, s, repeat: int) -> float:
    points = np.empty((len(s), 3))
    rotations = np.empty((len(s), 3, 3))
    # warm up once, then time
    module.integrate_chord(cx, cy, s, 1.0, 1.0, points, rotations)
    start = time.perf_counter()
    for _ in range(repeat):
        module.integrate_chord(cx, cy, s, 1.0, 1.0, points, rotations)
        module.integrate_chained(cx, cy, s, 1.0, 1.0, points, rotations)
    elapsed = time.perf_counter() - start
    return elapsed / (2 * repeat)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=101)
    parser.add_argument("--repeat", type=int, default=300)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cx = rng.uniform(-2.0, 2.0, 3)
    cy = rng.uniform(-2.0, 2.0, 3)
    s = np.arange(args.samples, dtype=float) / float(args.samples - 1)

    available = kernels.backends()
    print(f"samples per curve: {args.samples}, repeats: {args.repeat}")
    print(f"active backend: {kernels.BACKEND}")
    results = {}
    for name, module in available.items():
        per_call = time_backend(module, cx, cy, s, args.repeat)
        results[name] = per_call
        print(f"  {name:10s} {per_call * 1e6:10.1f} us/integration")
    if "compiled" in results and "python" in results:
        print(f"  speedup    {results['python'] / results['compiled']:10.1f}x")
    else:
        print("  (compiled backend not built; install with a C compiler to compare)")


if __name__ == "__main__":
    main()
