"""Compare the numba and numpy point-count kernels.

    python3 benchmarks/bench_point_count.py [--repeat N]

Both kernels run on the same tables and must return the same sum.
"""

import argparse
import time

import numpy as np

from oddjac import accel
from oddjac.classnum import _ext_tables
from oddjac.ffpoly import FieldSpec, parse_poly

CASES = [
    (3, "T^5+2*T+1", 6),
    (3, "2*T^6+T+2", 8),
    (5, "T^5+T+3", 5),
    (7, "T^5+3*T+1", 4),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'q':>3} {'D':<12} {'i':>2} {'field':>8} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for q, text, i in CASES:
        F = FieldSpec(q)
        coeffs = np.array(parse_poly(F, text).coeffs, dtype=np.int64)
        tabs = _ext_tables(F, i)
        call = lambda k: k(coeffs, tabs.exp, tabs.log, tabs.add_q, q)
        call(accel.char_sum_jit)  # compile
        t_jit, a = best_of(lambda: call(accel.char_sum_jit), args.repeat)
        t_np, b = best_of(lambda: call(accel.char_sum_numpy), args.repeat)
        assert a == b, (q, text, i, a, b)
        print(f"{q:>3} {text:<12} {i:>2} {q**i:>8} {t_jit:>10.4f} {t_np:>10.4f} {t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    main()
