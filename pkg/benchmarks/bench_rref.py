"""Compare the compiled and numpy row-reduction kernels.

Usage: python3 benchmarks/bench_rref.py [--repeat N] [--quick]

Times ``rref_mod_p`` on random dense matrices and ``quotient_breakdown`` on
a few witnesses, checks that both backends agree, and prints the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ghcsearch.fpalgebra import quotient_breakdown, sample_witness
from ghcsearch.linalg import BACKEND, rref_mod_p
from ghcsearch.multidegree import MultiDegree

MATRIX_CASES = [(200, 300, 101), (500, 500, 101), (1000, 800, 65521), (2000, 1500, 101)]
WITNESS_CASES = [(10, "(2^2,3)", "(1^7,2)"), (14, "(2,3^3)", "(1^9,2,3^2)"), (20, "(2^3,3^3)", "(1^13,2^3,3^2)")]


def best_of(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def row(label, t_c, t_py):
    return f"{label:<34} {t_c * 1e3:>11.1f} {t_py * 1e3:>11.1f} {t_py / t_c:>8.1f}x"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest cases")
    args = ap.parse_args()
    if BACKEND != "cython":
        raise SystemExit("compiled kernel not built; reinstall with a C compiler available")

    matrices = MATRIX_CASES[:2] if args.quick else MATRIX_CASES
    witnesses = WITNESS_CASES[:2] if args.quick else WITNESS_CASES
    rng = np.random.default_rng(0)
    print(f"{'case':<34} {'cython ms':>11} {'python ms':>11} {'speedup':>9}")
    for rows, cols, p in matrices:
        m = rng.integers(0, p, size=(rows, cols))
        t_c, (r_c, piv_c) = best_of(lambda: rref_mod_p(m, p, backend="cython"), args.repeat)
        t_py, (r_py, piv_py) = best_of(lambda: rref_mod_p(m, p, backend="python"), args.repeat)
        assert piv_c == piv_py and np.array_equal(r_c, r_py), "backends disagree"
        print(row(f"rref {rows}x{cols} p={p}", t_c, t_py))
    for n, a, b in witnesses:
        gh = sample_witness(n, MultiDegree.parse(a), MultiDegree.parse(b), 101, 0)
        t_c, info_c = best_of(lambda: quotient_breakdown(gh, backend="cython"), args.repeat)
        t_py, info_py = best_of(lambda: quotient_breakdown(gh, backend="python"), args.repeat)
        assert info_c == info_py, "backends disagree"
        print(row(f"quotient n={n} a={a}", t_c, t_py))


if __name__ == "__main__":
    main()
