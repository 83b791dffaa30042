import itertools
import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from frobsplit import kernels
from frobsplit._accel import HAVE_NUMBA

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


def rank_fractions(rows):
    """Plain Gauss-Jordan over Q."""
    M = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("backend", BACKENDS)
def test_rank_matches_fraction_elimination(backend):
    rng = random.Random(99)
    for _ in range(300):
        r, c = rng.randint(1, 9), rng.randint(1, 9)
        base = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)]
        # force dependent rows now and then
        if r > 2 and rng.random() < 0.5:
            base[-1] = [a + 2 * b for a, b in zip(base[0], base[1])]
        A = np.array(base, dtype=np.int64)
        assert kernels.exact_rank(A, backend=backend) == rank_fractions(base)


@pytest.mark.parametrize("backend", BACKENDS)
def test_rank_survives_int64_overflow(backend):
    rng = random.Random(5)
    big = [[rng.randint(-(10**12), 10**12) for _ in range(6)] for _ in range(6)]
    big[5] = [a - b for a, b in zip(big[0], big[1])]
    assert kernels.exact_rank(np.array(big, dtype=np.int64), backend=backend) == rank_fractions(big) == 5


def test_rank_edge_cases():
    assert kernels.exact_rank(np.zeros((0, 3), dtype=np.int64)) == 0
    assert kernels.exact_rank(np.zeros((3, 4), dtype=np.int64)) == 0
    with pytest.raises(ValueError):
        kernels.exact_rank(np.zeros(3))
    with pytest.raises(ValueError):
        kernels.exact_rank(np.eye(2, dtype=np.int64), backend="fortran")


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("length,m", [(1, 1), (1, 5), (3, 2), (4, 3), (4, 4), (5, 3), (2, 7)])
def test_digit_sum_histogram(backend, length, m):
    brute = Counter(sum(t) for t in itertools.product(range(m), repeat=length))
    hist = kernels.digit_sum_histogram(length, m, backend=backend)
    assert {s: int(c) for s, c in enumerate(hist) if c} == dict(brute)


def test_numpy_histogram_chunking():
    small = kernels._digit_sum_histogram_np(6, 4, chunk=16)
    assert np.array_equal(small, kernels._digit_sum_histogram_np(6, 4))
    assert small.sum() == 4**6


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_backends_agree_on_large_histogram():
    a = kernels.digit_sum_histogram(8, 5, backend="numba")
    b = kernels.digit_sum_histogram(8, 5, backend="numpy")
    assert np.array_equal(a, b)


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys

    code = (
        "from frobsplit._accel import default_backend, DISABLED\n"
        "from frobsplit.oracles import thomsen_enumerate, thomsen_counts\n"
        "assert DISABLED and default_backend() == 'numpy'\n"
        "assert thomsen_enumerate(3, 3, 5).counts == thomsen_counts(3, 3, 5).counts\n"
        "print('ok')\n"
    )
    env = dict(os.environ, FROBSPLIT_DISABLE_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "ok"
