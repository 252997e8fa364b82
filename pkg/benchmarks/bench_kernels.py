"""Benchmark the array kernels: JIT-compiled loops against plain numpy.

Runs every kernel over identical seeded inputs on both backends, verifies
the outputs agree bit for bit, and reports best-of-N wall times with the
speedup of the JIT path.  The JIT backend is warmed up once per kernel so
compilation time is excluded from the measurement.

Usage:

    python3 benchmarks/bench_kernels.py --size 1000000 --repeats 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from polyrep import kernels


def _inputs(size: int, seed: int):
    rng = np.random.default_rng(seed)
    rows_a = rng.dirichlet((1.0, 1.0, 1.0), size=size)
    rows_b = rng.dirichlet((1.0, 1.0, 1.0), size=size)
    rates_a = rng.uniform(0.0, 1.0, size=size)
    rates_b = rng.uniform(0.0, 1.0, size=size)
    r = rng.uniform(0.0, 1000.0, size=size)
    s = rng.uniform(0.0, 1000.0, size=size)
    return {
        "evidence_to_opinion": (r, s),
        "opinion_to_evidence": (rows_a[:, 0], rows_a[:, 1], rows_a[:, 2]),
        "consensus": (
            rows_a[:, 0], rows_a[:, 1], rows_a[:, 2], rates_a,
            rows_b[:, 0], rows_b[:, 1], rows_b[:, 2], rates_b,
        ),
        "recommend": (
            rows_a[:, 0], rows_a[:, 1], rows_a[:, 2],
            rows_b[:, 0], rows_b[:, 1], rows_b[:, 2], rates_b,
        ),
        "expectation": (rows_a[:, 0], rows_a[:, 2], rates_a),
    }


def _best_time(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def _as_tuple(result):
    return result if isinstance(result, tuple) else (result,)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1_000_000, help="array length")
    parser.add_argument("--repeats", type=int, default=5, help="timing repetitions")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    data = _inputs(args.size, args.seed)
    names = list(data)

    results: dict[str, dict[str, float]] = {name: {} for name in names}
    outputs: dict[str, dict[str, tuple]] = {name: {} for name in names}

    for backend in ("numpy", "numba"):
        try:
            kernels.set_backend(backend)
        except ImportError:
            print(f"backend {backend!r} unavailable, skipping")
            continue
        for name in names:
            fn = getattr(kernels, name)
            fn(*data[name])  # warmup: numba compiles here, numpy warms caches
            results[name][backend] = _best_time(fn, data[name], args.repeats)
            outputs[name][backend] = _as_tuple(fn(*data[name]))

    for name in names:
        got = outputs[name]
        if len(got) == 2:
            for left, right in zip(got["numpy"], got["numba"]):
                if not np.array_equal(left, right):
                    raise SystemExit(f"backend outputs differ for {name}")

    name_w = max(len(n) for n in names)
    print(f"size={args.size} repeats={args.repeats} (best-of wall time)")
    print(f"{'kernel':<{name_w}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name in names:
        numpy_t = results[name].get("numpy")
        numba_t = results[name].get("numba")
        numpy_text = f"{numpy_t * 1e3:.2f}ms" if numpy_t else "-"
        numba_text = f"{numba_t * 1e3:.2f}ms" if numba_t else "-"
        speedup = f"{numpy_t / numba_t:.2f}x" if numpy_t and numba_t else "-"
        print(f"{name:<{name_w}}  {numpy_text:>10}  {numba_text:>10}  {speedup:>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
