"""Benchmark the compiled kernels against the pure-Python fallback.

Run from the repository root after an editable install:

    python benchmarks/bench_kernels.py [--n 200000] [--repeats 5]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from ndwu_lab import sampling
from ndwu_lab.kernels import _py

try:
    from ndwu_lab.kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    tables = sampling.sample_no_signaling_tables(args.n, args.seed)
    backends = [("python", _py)]
    if _core is not None:
        backends.append(("compiled", _core))
    else:
        print("compiled backend unavailable; timing only the fallback")

    results = {}
    for name, mod in backends:
        results[name] = {
            "chsh_batch": _time(mod.chsh_batch, tables, repeats=args.repeats),
            "criterion_batch": _time(mod.criterion_batch, tables, 1e-9,
                                     repeats=args.repeats),
        }

    if _core is not None:
        assert np.allclose(_py.chsh_batch(tables), _core.chsh_batch(tables))
        assert np.allclose(_py.criterion_batch(tables, 1e-9),
                           _core.criterion_batch(tables, 1e-9))
        print("backend agreement: OK")

    print(f"\n{args.n} behaviors, best of {args.repeats} runs:")
    for kernel in ("chsh_batch", "criterion_batch"):
        line = f"  {kernel:<16}"
        for name, _ in backends:
            line += f"  {name}: {results[name][kernel] * 1e3:8.2f} ms"
        if _core is not None:
            speedup = results["python"][kernel] / results["compiled"][kernel]
            line += f"  ({speedup:.1f}x)"
        print(line)


if __name__ == "__main__":
    main()
