"""Time the compiled and pure-Python error kernels on the full accuracy grid.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from nystrom import _backend
from nystrom.bench import run_table2


def time_backend(name, repeat):
    best = float("inf")
    reports = None
    for _ in range(repeat):
        start = time.perf_counter()
        reports = run_table2(kernel=name)
        best = min(best, time.perf_counter() - start)
    return best, reports


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    results = {}
    for name in sorted(_backend.KERNELS):
        repeat = args.repeat if name == "cython" else 1
        results[name] = time_backend(name, repeat)
        print(f"{name:>8}: {results[name][0]:8.3f} s for 48 cells")

    if len(results) == 2:
        (t_cy, cy), (t_py, py) = results["cython"], results["python"]
        drift = max(abs(a.acc - b.acc) for a, b in zip(cy, py))
        print(f" speedup: {t_py / t_cy:8.1f}x   max acc difference {drift:.1e}")
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
