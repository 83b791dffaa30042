"""Independent ground truth.

Thomsen counting
    ``F_m* O(d)`` splits into line bundles; ``O(t)`` occurs once for every
    residue tuple ``a in {0..m-1}^{n+1}`` with ``sum(a) = d - t*m``.
    :func:`thomsen_counts` uses inclusion-exclusion, :func:`thomsen_enumerate`
    visits every tuple.

Koszul-Cech
    ``Omega^p(k)`` is resolved by the truncated Koszul complex
    ``O(k-p)^{C(n+1,p)} -> ... -> O(k-1)^{n+1} -> O(k)`` whose differential
    contracts with ``(x_0, ..., x_n)``.  Each term gets its Cech complex on the
    standard affine cover.  The double complex is graded by fine degree
    ``c in Z^{n+1}`` (``e_I * x^e`` has degree ``e + 1_I``), so it splits into
    finite pieces.  The pieces are assembled as explicit integer matrices and
    their ranks are computed exactly.  Nothing here calls Bott's formula.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded
from .exact_arith import binom
from .kernels import digit_sum_histogram, exact_rank

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class ResidueCount:
    """``counts[t]`` is the multiplicity of ``O(t)`` in ``F_m* O(d)`` on ``P^n``."""

    n: int
    m: int
    d: int
    counts: dict

    def total(self) -> int:
        return sum(self.counts.values())

    def as_text(self) -> str:
        body = ",".join(f"{t}:{c}" for t, c in sorted(self.counts.items(), reverse=True))
        return "{" + body + "}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "counts": [
                {"twist": t, "mult": c} for t, c in sorted(self.counts.items(), reverse=True)
            ],
        }


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"Frobenius degree must be >= 1, got {m}")


def thomsen_counts(n: int, m: int, d: int) -> ResidueCount:
    _check_m(m)
    L = n + 1
    counts = {}
    t_max = d // m
    t_min = -((L * (m - 1) - d) // m)  # ceil((d - L(m-1)) / m)
    for t in range(t_min, t_max + 1):
        s = d - t * m
        c = sum(
            (-1) ** j * binom(L, j) * binom(s - j * m + n, n) for j in range(L + 1)
        )
        if c:
            counts[t] = c
    return ResidueCount(n, m, d, counts)


def thomsen_enumerate(
    n: int, m: int, d: int, budget: int = DEFAULT_BUDGET, backend: str | None = None
) -> ResidueCount:
    _check_m(m)
    size = m ** (n + 1)
    if size > budget:
        raise BudgetExceeded(
            f"enumerating {m}^{n + 1} = {size} residue tuples exceeds budget {budget}",
            size=size, budget=budget,
        )
    hist = digit_sum_histogram(n + 1, m, backend=backend)
    counts: Counter = Counter()
    for total, c in enumerate(hist.tolist()):
        if c and (d - total) % m == 0:
            counts[(d - total) // m] += c
    return ResidueCount(n, m, d, dict(counts))


# --- Koszul-Cech ---------------------------------------------------------

NEG, ZERO, POS = -1, 0, 1


def _sign_class(v: int) -> int:
    return NEG if v < 0 else (ZERO if v == 0 else POS)


def _subsets(ground: int, size: int):
    return itertools.combinations(range(ground), size)


@dataclass
class MonomialComplex:
    """One fine-degree piece of the Koszul-Cech double complex.

    ``bases[q]`` lists the basis of total degree ``q`` as triples
    ``(j, I, J)``: Koszul position ``j`` (wedge ``e_I``, ``|I| = p - j``),
    Cech chart set ``J`` (``|J| = q - j + 1``).  The Laurent monomial is
    ``x^(c - 1_I)`` and is implied by the fine degree.  Bases are sorted
    lexicographically by ``(j, I, J)`` with ``I`` and ``J`` as increasing
    tuples.  ``differentials[q]`` maps degree ``q`` to ``q + 1``
    (rows: targets, columns: sources).
    """

    n: int
    p: int
    signs: tuple[int, ...]
    bases: list[list[tuple]]
    differentials: list[np.ndarray]

    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]

    def check_d_squared(self) -> None:
        for q in range(len(self.differentials) - 1):
            prod = self.differentials[q + 1] @ self.differentials[q]
            if prod.size and np.any(prod):
                raise RuntimeError(
                    f"d o d != 0 in degree {q} of piece {self.signs} (n={self.n}, p={self.p})"
                )

    def cohomology(self, backend: str | None = None) -> list[int]:
        ranks = [exact_rank(D, backend=backend) for D in self.differentials]
        h = []
        for q, dim in enumerate(self.dims()):
            r_out = ranks[q] if q < len(ranks) else 0
            r_in = ranks[q - 1] if q >= 1 else 0
            h.append(dim - r_out - r_in)
        return h


def monomial_complex(n: int, p: int, signs: tuple[int, ...]) -> MonomialComplex:
    """Build the piece whose fine degree has the given sign pattern.

    A basis element ``(j, I, J)`` exists iff the monomial ``x^(c - 1_I)`` is
    regular on ``U_J``, i.e. ``c_i - [i in I] >= 0`` for every ``i`` not in
    ``J``; that only depends on whether each ``c_i`` is negative, zero or
    positive.
    """
    N = n + 1

    def exists(I, J):
        for i in range(N):
            if i in J:
                continue
            s = signs[i]
            if s == NEG or (s == ZERO and i in I):
                return False
        return True

    top = n + p
    bases: list[list[tuple]] = [[] for _ in range(top + 1)]
    for q in range(top + 1):
        for j in range(p + 1):
            a = q - j
            if not 0 <= a <= n:
                continue
            for I in _subsets(N, p - j):
                for J in _subsets(N, a + 1):
                    if exists(I, J):
                        bases[q].append((j, I, J))
        bases[q].sort()
    index = [{b: i for i, b in enumerate(basis)} for basis in bases]

    differentials = []
    for q in range(top):
        D = np.zeros((len(bases[q + 1]), len(bases[q])), dtype=np.int64)
        tgt = index[q + 1]
        for col, (j, I, J) in enumerate(bases[q]):
            a = q - j
            # Cech: add chart l, sign from its position in the enlarged set
            for l in range(N):
                if l in J:
                    continue
                J2 = tuple(sorted(J + (l,)))
                row = tgt.get((j, I, J2))
                if row is not None:
                    D[row, col] += (-1) ** J2.index(l)
            # Koszul contraction, twisted by (-1)^a
            for pos, i in enumerate(I):
                I2 = I[:pos] + I[pos + 1 :]
                row = tgt.get((j + 1, I2, J))
                if row is not None:
                    D[row, col] += (-1) ** a * (-1) ** pos
        differentials.append(D)
    return MonomialComplex(n, p, signs, bases, differentials)


@lru_cache(maxsize=None)
def _piece_cohomology(n: int, p: int, signs: tuple[int, ...]) -> tuple[int, ...]:
    cx = monomial_complex(n, p, signs)
    cx.check_d_squared()
    return tuple(cx.cohomology())


def cech_bound(k: int) -> int:
    """Box half-width for fine degrees that can carry cohomology.

    Only pieces where some ``c - 1_I`` is ``>= 0`` or ``<= -1`` everywhere
    are non-acyclic; with ``sum(c) = k`` their coordinates lie in
    ``[-|k|, |k|]``.
    """
    return max(abs(k), 1)


def fine_degree_types(n: int, k: int, bound: int) -> Counter:
    """Sign patterns of all ``c`` in ``[-bound, bound]^{n+1}`` with ``sum(c) = k``."""
    types: Counter = Counter()
    rng = range(-bound, bound + 1)
    for head in itertools.product(rng, repeat=n):
        last = k - sum(head)
        if -bound <= last <= bound:
            types[tuple(_sign_class(v) for v in (*head, last))] += 1
    return types


def koszul_cech(
    n: int,
    p: int,
    k: int,
    bound_scale: int = 1,
    max_n: int = 4,
    max_twist: int = 8,
) -> tuple[int, ...]:
    """``h^q(P^n, Omega^p(k))`` for ``q = 0..n`` from the explicit double complex."""
    if n < 1 or not 0 <= p <= n:
        raise ValueError(f"need n >= 1 and 0 <= p <= n, got n={n}, p={p}")
    if n > max_n or abs(k) > max_twist:
        raise BudgetExceeded(
            f"Koszul-Cech oracle limited to n <= {max_n}, |k| <= {max_twist}",
            n=n, k=k,
        )
    bound = cech_bound(k) * bound_scale
    total = [0] * (n + p + 1)
    for signs, count in fine_degree_types(n, k, bound).items():
        for q, v in enumerate(_piece_cohomology(n, p, signs)):
            total[q] += count * v
    if any(total[n + 1 :]):
        raise RuntimeError(f"cohomology above degree n for n={n}, p={p}, k={k}: {total}")
    return tuple(total[: n + 1])
