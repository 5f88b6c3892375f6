"""Compiled vs pure-Python kernels: agreement and timing.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from mtzeta.kernels import available_backends, get_backend

CASES = {
    "inner_sum": lambda k: k.inner_sum(1.5, 2.0, 3.7, 24, 8),
    "direct_block(x=1)": lambda k: k.direct_block(1.0, 2.0, 1.0, 1.0, 40, 18, 8),
    "direct_block(x=0.2)": lambda k: k.direct_block(2.5, 3.0, 0.5, 0.2, 200, 20, 8),
    "polylog_series": lambda k: k.polylog_series(2.5, np.linspace(0.5, 30.0, 400)),
}


def bench(fn, repeat):
    fn()  # warm-up
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    mods = {name: get_backend(name) for name in backends}
    print(f"{'kernel':22s}" + "".join(f"{b:>14s}" for b in backends) + f"{'speedup':>10s}{'max |diff|':>14s}")
    for name, case in CASES.items():
        times = {b: bench(lambda m=m: case(m), args.repeat) for b, m in mods.items()}
        values = {}
        for b, m in mods.items():
            out = case(m)
            values[b] = np.ravel(np.asarray(out[0] if isinstance(out, tuple) else out, dtype=float))
        diff = max(float(np.max(np.abs(values[b] - values["python"]))) for b in backends)
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        row = f"{name:22s}" + "".join(f"{times[b] * 1e3:12.3f}ms" for b in backends)
        print(row + f"{speed:9.1f}x{diff:14.2e}")


if __name__ == "__main__":
    main()
