"""Benchmark the compiled Hurwitz kernel against the numpy fallback.

Usage:  python benchmarks/bench_kernel.py [n_points]

The workload mirrors a zero scan: one critical-line grid per (q, a/q)
row at heights up to 500. Reports points/second for both backends and
the max pointwise disagreement (must sit at float roundoff, ~1e-14).
"""

from __future__ import annotations

import sys
import time

import numpy as np

from lzeros.kernels import active_backend, numpy_backend


def run(n: int = 4001) -> None:
    ts = np.linspace(-500.0, 500.0, n)
    shifts = [1.0, 1.0 / 3.0, 2.0 / 7.0, 5.0 / 11.0]

    results = {}
    for name, backend in (("numpy", numpy_backend),
                          (active_backend.BACKEND, active_backend)):
        t0 = time.perf_counter()
        grids = [backend.hurwitz_grid(0.5, ts, a) for a in shifts]
        dt = time.perf_counter() - t0
        results[name] = (dt, grids)
        rate = n * len(shifts) / dt
        print(f"{name:>8}: {dt:8.3f}s  ({rate:,.0f} points/s)")

    names = list(results)
    if len(set(names)) == 2:
        worst = max(
            float(np.max(np.abs(a - b)))
            for a, b in zip(results[names[0]][1], results[names[1]][1])
        )
        print(f"max |numpy - {names[1]}| = {worst:.3e}")
        spread = results["numpy"][0] / results[names[1]][0]
        print(f"speedup: {spread:.1f}x")
    else:
        print("compiled backend unavailable; only numpy timed")


if __name__ == "__main__":
    run(int(sys.argv[1]) if len(sys.argv) > 1 else 4001)
