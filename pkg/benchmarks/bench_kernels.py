"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call per signature compiles (or loads the on-disk cache), so
it is timed separately as warm-up.
"""
import argparse
import time

import numpy as np

from infocluster.kernels import _jit, _numpy


def cases(rng):
    n = 16
    counts = rng.integers(0, 3, size=n).astype(np.int64)
    rows = rng.integers(0, 1 << 24, size=(n, 2)).astype(np.int64)
    values = rng.integers(-100, 100, size=1 << n).astype(np.int64)
    weights = rng.integers(-5, 5, size=n).astype(np.int64)
    rgs9 = _numpy.rgs_table(9)
    table9 = rng.integers(0, 100, size=1 << 9).astype(np.int64)
    elements = np.arange(9, dtype=np.int64)
    masks = rng.integers(0, 1 << 30, size=n).astype(np.int64)
    return {
        "subset_sum n=16": lambda k: k.subset_sum(weights),
        "subset_or n=16": lambda k: k.subset_or(masks),
        "rank_table n=16, 24 bits": lambda k: k.rank_table(rows, counts, 24),
        "sfm_scan n=16": lambda k: k.sfm_scan(values, weights, (1 << n) - 1, 1 << 7, 0),
        "rgs_table m=9": lambda k: k.rgs_table(9),
        "partition_sums m=9": lambda k: k.partition_sums(rgs9, elements, table9),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'warm-up':>10s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, call in cases(rng).items():
        t = time.perf_counter()
        call(_jit)
        warm = time.perf_counter() - t
        fast = best_of(lambda: call(_jit), args.repeat)
        slow = best_of(lambda: call(_numpy), args.repeat)
        print(f"{name:28s} {warm * 1e3:9.1f}ms {fast * 1e3:9.2f}ms {slow * 1e3:9.2f}ms {slow / fast:7.1f}x")


if __name__ == "__main__":
    main()
