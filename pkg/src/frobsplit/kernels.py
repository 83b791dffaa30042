"""Hot loops of the oracles, each with a numba and a pure-numpy path.

* ``digit_sum_histogram``: how many tuples in ``{0..m-1}^L`` have each digit sum.
* ``exact_rank``: rank over the rationals of an integer matrix by
  fraction-free (Bareiss) elimination.

The numba rank kernel works in int64 and gives up (returns -1) as soon as an
operand could overflow; the caller then reruns the exact object-dtype path.
Both paths return identical results; ``backend=None`` follows the
``FROBSPLIT_DISABLE_NUMBA`` flag.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, default_backend, njit

# |operands| <= 2**31 - 1 keeps p*a - f*b inside int64
_I64_OPERAND_LIMIT = 2**31 - 1


def _resolve(backend: str | None) -> str:
    backend = default_backend() if backend is None else backend
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


# --- digit-sum histogram ---------------------------------------------------


@njit(cache=True)
def _digit_sum_histogram_nb(length, m):
    out = np.zeros(length * (m - 1) + 1, dtype=np.int64)
    digits = np.zeros(length, dtype=np.int64)
    total = 1
    for _ in range(length):
        total *= m
    s = 0
    for _ in range(total):
        out[s] += 1
        i = 0
        while i < length:
            digits[i] += 1
            s += 1
            if digits[i] < m:
                break
            s -= m
            digits[i] = 0
            i += 1
    return out


def _all_digit_sums(length: int, m: int) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    step = np.arange(m, dtype=np.int64)
    for _ in range(length):
        sums = (sums[:, None] + step[None, :]).ravel()
    return sums


def _digit_sum_histogram_np(length: int, m: int, chunk: int = 1 << 20) -> np.ndarray:
    inner_len = 0
    while inner_len < length and m ** (inner_len + 1) <= chunk:
        inner_len += 1
    inner_len = max(inner_len, min(length, 1))
    inner = np.bincount(_all_digit_sums(inner_len, m))
    out = np.zeros(length * (m - 1) + 1, dtype=np.int64)
    # every outer tuple is visited once and paired with every inner tuple
    for s in _all_digit_sums(length - inner_len, m):
        out[s : s + inner.size] += inner
    return out


def digit_sum_histogram(length: int, m: int, backend: str | None = None) -> np.ndarray:
    if length < 0 or m < 1:
        raise ValueError(f"need length >= 0 and m >= 1, got {length}, {m}")
    if length == 0:
        return np.ones(1, dtype=np.int64)
    if _resolve(backend) == "numba":
        return _digit_sum_histogram_nb(length, m)
    return _digit_sum_histogram_np(length, m)


# --- exact rank -----------------------------------------------------------


@njit(cache=True)
def _bareiss_rank_i64_nb(A, limit):
    M = A.copy()
    rows, cols = M.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = M[piv, j]
                M[piv, j] = M[rank, j]
                M[rank, j] = tmp
        p = M[rank, c]
        if abs(p) > limit:
            return -1
        for i in range(rank + 1, rows):
            f = M[i, c]
            if f == 0:
                for j in range(c + 1, cols):
                    a = M[i, j]
                    if abs(a) > limit:
                        return -1
                    M[i, j] = (p * a) // prev
                continue
            if abs(f) > limit:
                return -1
            for j in range(c + 1, cols):
                a = M[i, j]
                b = M[rank, j]
                if abs(a) > limit or abs(b) > limit:
                    return -1
                M[i, j] = (p * a - f * b) // prev
            M[i, c] = 0
        prev = p
        rank += 1
    return rank


def _bareiss_rank_object(A) -> int:
    M = np.array(A, dtype=object)
    if M.size == 0:
        return 0
    rows, cols = M.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c] != 0)[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        p = M[rank, c]
        below = M[rank + 1 :, c + 1 :]
        M[rank + 1 :, c + 1 :] = (p * below - M[rank + 1 :, c : c + 1] * M[rank, c + 1 :]) // prev
        M[rank + 1 :, c] = 0
        prev = p
        rank += 1
    return rank


def exact_rank(A, backend: str | None = None) -> int:
    """Rank of an integer matrix over Q.  Never approximates."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {A.shape}")
    if A.size == 0:
        return 0
    if _resolve(backend) == "numba" and A.dtype.kind in "iu":
        r = _bareiss_rank_i64_nb(A.astype(np.int64), _I64_OPERAND_LIMIT)
        if r >= 0:
            return int(r)
    return _bareiss_rank_object(A)
