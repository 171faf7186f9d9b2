"""Compare the numba kernels with their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Each case is run once per backend to warm up (numba compiles on first call),
then timed ``--repeat`` times; the best time is reported together with a
check that both backends returned the same result.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from rsverify import _accel, _kernels
from rsverify.padic import PAdicContext, square_class_representatives
from rsverify.weil import _inverse_index, oscillator_table


def _unit_integral_inputs(p: int, m: int):
    table = oscillator_table(p, m)
    R = table.modulus_exp
    classes = np.arange(p ** R)
    weights = np.where((classes % p != 0) | (R == 0), 1.0 / table.values, 0)
    return (p, m + 2, m, R, weights, _inverse_index(p, R))


def _hilbert_batch(p: int, backend: str):
    reps = square_class_representatives(PAdicContext(p))
    k = 3
    out = []
    for a in reps:
        for b in reps:
            ra = a.unit_mod(k) * p ** (a.valuation % 2)
            rb = b.unit_mod(k) * p ** (b.valuation % 2)
            out.append(_kernels.primitive_zero_exists(ra, rb, p, k, backend=backend))
    return out


CASES = {
    "square_counts 3^13": lambda b: _kernels.square_counts(3 ** 13, backend=b),
    "square_counts 11^6": lambda b: _kernels.square_counts(11 ** 6, backend=b),
    "unit_phase_sum p=7 m=4": lambda b: _kernels.unit_phase_sum(*_unit_integral_inputs(7, 4), backend=b),
    "unit_phase_sum p=11 m=4": lambda b: _kernels.unit_phase_sum(*_unit_integral_inputs(11, 4), backend=b),
    "hilbert search p=11 (16 pairs)": lambda b: _hilbert_batch(11, b),
}


def _same(x, y) -> bool:
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    if isinstance(x, complex):
        return abs(x - y) < 1e-9
    return x == y


def best_time(fn, backend: str, repeat: int) -> tuple[float, object]:
    result = fn(backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="emit JSON rows instead of a table")
    args = parser.parse_args(argv)
    if not _accel.NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy path can run")
        return 1
    rows = []
    for name, fn in CASES.items():
        t_numpy, r_numpy = best_time(fn, "numpy", args.repeat)
        t_numba, r_numba = best_time(fn, "numba", args.repeat)
        rows.append({"case": name, "numpy_ms": t_numpy * 1e3, "numba_ms": t_numba * 1e3,
                     "speedup": t_numpy / t_numba, "agree": _same(r_numpy, r_numba)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':34} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}  agree")
        for r in rows:
            print(f"{r['case']:34} {r['numpy_ms']:10.2f} {r['numba_ms']:10.2f} {r['speedup']:8.2f}  {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
