#!/usr/bin/env python3
"""Benchmark the compiled Clenshaw kernel against the numpy fallback.

Run from the repository root after `python setup.py build_ext --inplace` (or
a regular install):

    python benchmarks/bench_kernels.py

The compiled kernel wins on the scalar/small-batch calls that dominate the
root solvers and golden-section refinement; the numpy fallback is competitive
on large batches, where its per-call overhead is amortized.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from postrig import _kernels_py  # noqa: E402

try:
    from postrig import _kernels
except ImportError:
    _kernels = None

CASES = [
    # (coefficients, grid points, repeats) spanning scalar to bulk regimes
    (40, 1, 20000),
    (40, 128, 2000),
    (100, 4096, 200),
    (1000, 4096, 40),
    (10000, 1000, 20),
]


def bench(fn, coeffs, xs, repeats):
    fn(coeffs, xs)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(coeffs, xs)
    return (time.perf_counter() - t0) / repeats


def main() -> int:
    rng = np.random.default_rng(7)
    print(f"{'n_coeffs':>9} {'n_theta':>8} {'python':>12} {'cython':>12} {'speedup':>8}")
    for n, m, repeats in CASES:
        coeffs = rng.normal(size=n)
        xs = rng.uniform(0.0, 2.0 * np.pi, m)
        t_py = bench(_kernels_py.pair_sums, coeffs, xs, repeats)
        if _kernels is None:
            print(f"{n:>9} {m:>8} {t_py * 1e6:>10.1f}us {'absent':>12} {'-':>8}")
            continue
        t_cy = bench(_kernels.pair_sums, coeffs, xs, repeats)
        C1, S1 = _kernels_py.pair_sums(coeffs, xs)
        C2, S2 = _kernels.pair_sums(coeffs, xs)
        scale = np.abs(coeffs).sum()
        drift = max(np.abs(C1 - C2).max(), np.abs(S1 - S2).max()) / scale
        print(f"{n:>9} {m:>8} {t_py * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us "
              f"{t_py / t_cy:>7.1f}x   (agree to {drift:.1e})")
    if _kernels is None:
        print("compiled kernel not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
