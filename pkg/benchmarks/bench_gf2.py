"""Compare the numba and numpy GF(2) elimination kernels.

Usage: python3 benchmarks/bench_gf2.py [--rows N] [--reps R] [--seed S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from quotient import _kernels


def run(kernel, words: np.ndarray, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        start = time.perf_counter()
        kernel(words, 14)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=5000, help="matrix rows")
    parser.add_argument("--reps", type=int, default=20, help="repetitions, best-of")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    words = rng.integers(0, 1 << 14, size=args.rows, dtype=np.uint16)

    kernels = [("numpy", _kernels.eliminate_numpy)]
    try:
        _kernels.eliminate_numba(words[:16], 14)  # warm-up triggers the JIT compile
        kernels.append(("numba", _kernels.eliminate_numba))
    except ImportError:
        print("numba unavailable, benchmarking the numpy kernel only")

    print(f"rows={args.rows} reps={args.reps} (best-of)")
    results = {}
    for name, kernel in kernels:
        kernel(words[:16], 14)  # touch both paths before timing
        best = run(kernel, words, args.reps)
        results[name] = best
        print(f"  {name:>6}: {best * 1e3:8.3f} ms")

    if len(results) == 2:
        ratio = results["numpy"] / results["numba"]
        print(f"  speedup (numpy/numba): {ratio:.2f}x")
        a = _kernels.eliminate_numpy(words, 14)
        b = _kernels.eliminate_numba(words, 14)
        agree = np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        print(f"  kernels agree: {agree}")


if __name__ == "__main__":
    main()
