#!/usr/bin/env python3
"""Compare the compiled kernel core against the NumPy fallback.

Times the three kernel entry points on representative workloads plus an
end-to-end cross-validation sweep.  Run from a checkout with the package
installed:

    python3 benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from expratio._backend import available_backends
from expratio import oracle


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    rng = np.random.default_rng(0)
    t_grid = np.concatenate([-np.geomspace(1e-3, 50, 5000)[::-1], np.geomspace(1e-3, 50, 5000)])
    params = rng.uniform(-5, 5, size=(50, 4))
    steps = 1e-3 * np.maximum(1.0, np.abs(t_grid))

    cases = {
        "log_abs_h (10k pts x 50 params)": lambda k: [
            k.log_abs_h(a, b, l, m, t_grid) for a, b, l, m in params
        ],
        "eval_h (10k pts x 50 params)": lambda k: [
            k.eval_h(a, b, l, m, t_grid) for a, b, l, m in params
        ],
        "fd_log_deriv order 3 (10k pts x 50 params)": lambda k: [
            k.fd_log_deriv(a, b, l, m, t_grid, 3, steps) for a, b, l, m in params
        ],
    }

    print(f"backends available: {', '.join(backends)}")
    results: dict[str, dict[str, float]] = {}
    for label, work in cases.items():
        results[label] = {}
        for name, mod in backends.items():
            results[label][name] = _time(lambda: work(mod), args.repeat)

    # end-to-end sweep: monkeypatch the oracle's kernel binding per backend
    label = "cross_validate (500 draws)"
    results[label] = {}
    original = oracle.kernels
    try:
        for name, mod in backends.items():
            oracle.kernels = mod
            results[label][name] = _time(lambda: oracle.cross_validate(500, seed=1), 1)
    finally:
        oracle.kernels = original

    width = max(len(k) for k in results)
    names = list(backends)
    print(f"{'case'.ljust(width)}  " + "  ".join(f"{n:>10}" for n in names) + "  speedup")
    for label, by_backend in results.items():
        row = "  ".join(f"{by_backend[n]:>9.4f}s" for n in names)
        if "python" in by_backend and "cython" in by_backend:
            ratio = by_backend["python"] / by_backend["cython"]
            row += f"  {ratio:>6.2f}x"
        print(f"{label.ljust(width)}  {row}")


if __name__ == "__main__":
    main()
