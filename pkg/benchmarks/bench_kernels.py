"""Compare the numba and pure-numpy kernel paths.

    python3 benchmarks/bench_kernels.py            # kernels + end-to-end sweep
    python3 benchmarks/bench_kernels.py --quick    # smaller sizes

Each kernel is timed after one warm-up call (so JIT compilation is excluded)
and the two backends are checked to agree before timing.  The end-to-end
section runs the Koszul-Cech vs Bott sweep in fresh interpreters with and
without FROBSPLIT_DISABLE_NUMBA, so it includes import and compile cost.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from frobsplit._accel import HAVE_NUMBA
from frobsplit.kernels import digit_sum_histogram, exact_rank

SWEEP = """
from frobsplit.cohomology import bott_h
from frobsplit.oracles import koszul_cech
bad = sum(koszul_cech(n, p, k) != bott_h(n, p, k)
          for n in (1, 2, 3) for p in range(n + 1) for k in range(-{K}, {K} + 1))
assert bad == 0
"""


def _best(fn, repeat: int) -> float:
    fn()  # warm-up / JIT
    number = 1
    while True:
        t = timeit.timeit(fn, number=number)
        if t > 0.05 or number >= 1 << 16:
            break
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def _row(name: str, t_nb: float | None, t_np: float) -> str:
    if t_nb is None:
        return f"{name:<38} {'n/a':>12} {t_np * 1e3:>12.3f} {'':>8}"
    return f"{name:<38} {t_nb * 1e3:>12.3f} {t_np * 1e3:>12.3f} {t_np / t_nb:>7.1f}x"


def _random_cech_like(rng, rows, cols, density=0.3):
    # entries in {-1, 0, 1}, like the sign matrices of the Cech/Koszul complex
    A = rng.integers(-1, 2, size=(rows, cols))
    A[rng.random((rows, cols)) > density] = 0
    return A.astype(np.int64)


def bench_kernels(quick: bool, repeat: int) -> None:
    rng = np.random.default_rng(0)
    hist_cases = [(3, 4), (4, 8), (5, 10)] if quick else [(3, 4), (4, 8), (5, 12), (6, 10), (7, 8)]
    rank_cases = [(20, 20), (60, 60)] if quick else [(20, 20), (60, 60), (120, 120), (200, 150)]

    print(f"{'kernel':<38} {'numba ms':>12} {'numpy ms':>12} {'speedup':>8}")
    for length, m in hist_cases:
        ref = digit_sum_histogram(length, m, backend="numpy")
        t_np = _best(lambda: digit_sum_histogram(length, m, backend="numpy"), repeat)
        t_nb = None
        if HAVE_NUMBA:
            assert np.array_equal(ref, digit_sum_histogram(length, m, backend="numba"))
            t_nb = _best(lambda: digit_sum_histogram(length, m, backend="numba"), repeat)
        print(_row(f"digit_sum_histogram L={length} m={m}", t_nb, t_np))
    for r, c in rank_cases:
        A = _random_cech_like(rng, r, c)
        ref = exact_rank(A, backend="numpy")
        t_np = _best(lambda: exact_rank(A, backend="numpy"), repeat)
        t_nb = None
        if HAVE_NUMBA:
            assert exact_rank(A, backend="numba") == ref
            t_nb = _best(lambda: exact_rank(A, backend="numba"), repeat)
        print(_row(f"exact_rank {r}x{c} (rank {ref})", t_nb, t_np))


def bench_sweep(quick: bool) -> None:
    K = 4 if quick else 6
    code = SWEEP.format(K=K)
    print(f"\nend-to-end Koszul-Cech vs Bott sweep, n<=3, |k|<={K} (fresh interpreter)")
    for label, flag in (("numba", "0"), ("numpy", "1")):
        if label == "numba" and not HAVE_NUMBA:
            continue
        env = dict(os.environ, FROBSPLIT_DISABLE_NUMBA=flag)
        start = time.perf_counter()
        subprocess.run([sys.executable, "-c", code], env=env, check=True)
        print(f"  {label:<6} {time.perf_counter() - start:8.2f} s")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-sweep", action="store_true")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba not installed; timing the numpy path only")
    bench_kernels(args.quick, args.repeat)
    if not args.no_sweep:
        bench_sweep(args.quick)
    return 0


if __name__ == "__main__":
    sys.exit(main())
