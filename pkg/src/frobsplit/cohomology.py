"""Cohomology tables of formal bundles via Bott's formula."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bundle import FormalBundle, Summand, normalize
from .errors import WindowInsufficient
from .exact_arith import binom, forward_difference

HSet = frozenset  # of (twist r, degree s) with 1 <= s <= n-1


def line_h(n: int, d: int) -> tuple[int, ...]:
    """``h^q(P^n, O(d))`` for ``q = 0..n``."""
    h = [0] * (n + 1)
    h[0] = binom(n + d, n)
    h[n] += binom(-d - 1, n)
    return tuple(h)


def bott_h(n: int, p: int, k: int) -> tuple[int, ...]:
    """``h^q(P^n, Omega^p(k))`` for ``q = 0..n``.

    The ``h^0`` and ``h^n`` branches are certified against the Koszul-Cech
    oracle in the test suite.
    """
    if not 0 <= p <= n:
        raise ValueError(f"power {p} outside [0, {n}]")
    if p == 0 or p == n:
        return line_h(n, normalize(n, p, k).twist)
    h = [0] * (n + 1)
    if k > p:
        h[0] = binom(k - 1, p) * binom(n + k - p, k)
    elif k == 0:
        h[p] = 1
    elif k < p - n:
        h[n] = binom(-k - 1, n - p) * binom(p - k, -k)
    return tuple(h)


def summand_h(n: int, s: Summand, t: int = 0) -> tuple[int, ...]:
    if s.is_line:
        return line_h(n, s.twist + t)
    return bott_h(n, s.power, s.twist + t)


def bundle_h(E: FormalBundle, t: int = 0) -> tuple[int, ...]:
    """``h^q(E(t))`` for ``q = 0..n``."""
    acc = [0] * (E.n + 1)
    for s, m in E:
        for q, v in enumerate(summand_h(E.n, s, t)):
            acc[q] += m * v
    return tuple(acc)


@dataclass(frozen=True)
class CohomologyTable:
    """Rows ``h^0..h^n`` of ``E(t)`` for every ``t`` in ``[lo, hi]``."""

    n: int
    lo: int
    hi: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if len(rows) != self.hi - self.lo + 1:
            raise ValueError(
                f"window [{self.lo}, {self.hi}] needs {self.hi - self.lo + 1} rows, "
                f"got {len(rows)}"
            )
        for t, r in zip(range(self.lo, self.hi + 1), rows):
            if len(r) != self.n + 1:
                raise ValueError(f"row for twist {t} has {len(r)} entries, need {self.n + 1}")
            if min(r) < 0:
                raise ValueError(f"negative entry in row for twist {t}: {r}")
        object.__setattr__(self, "rows", rows)

    @property
    def window(self) -> tuple[int, int]:
        return self.lo, self.hi

    @property
    def twists(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, t: int) -> bool:
        return self.lo <= t <= self.hi

    def entry(self, t: int) -> tuple[int, ...]:
        if t not in self:
            raise WindowInsufficient(
                f"twist {t} outside window [{self.lo}, {self.hi}]", twist=t,
                window=[self.lo, self.hi],
            )
        return self.rows[t - self.lo]

    def chi(self, t: int) -> int:
        return sum((-1) ** q * v for q, v in enumerate(self.entry(t)))

    def items(self):
        return zip(self.twists, self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["twist"] + [f"h{q}" for q in range(self.n + 1)])
        for t, r in self.items():
            w.writerow([t, *r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CohomologyTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        n = len(header) - 2
        expected = ["twist"] + [f"h{q}" for q in range(n + 1)]
        if n < 1 or [h.strip() for h in header] != expected:
            raise ValueError(f"bad CSV header {header!r}")
        data = [[int(x) for x in row] for row in reader if row]
        if not data:
            raise ValueError("CSV table has no rows")
        twists = [r[0] for r in data]
        lo, hi = twists[0], twists[-1]
        if twists != list(range(lo, hi + 1)):
            raise ValueError("CSV twists must be consecutive and ascending")
        return cls(n, lo, hi, tuple(tuple(r[1:]) for r in data))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "window": [self.lo, self.hi],
            "rows": {str(t): list(r) for t, r in self.items()},
        }

    def restrict(self, lo: int, hi: int) -> "CohomologyTable":
        if lo < self.lo or hi > self.hi:
            raise WindowInsufficient(
                f"[{lo}, {hi}] not inside [{self.lo}, {self.hi}]",
                window=[self.lo, self.hi],
            )
        return CohomologyTable(self.n, lo, hi, self.rows[lo - self.lo : hi - self.lo + 1])


def default_window(E: FormalBundle, margin: int | None = None) -> tuple[int, int]:
    """Exact support of the interesting twists, padded by ``n + 1`` each side.

    Every summand ``S(c)`` changes behaviour only near ``t = -c``; outside
    ``[-c_max - n - 1, -c_min + n + 1]`` a line summand shows only ``h^0`` on
    the right and only ``h^n`` on the left, with zeros at both boundaries.
    The window always contains ``[-n, 0]`` so the E_1 page can be read off.
    """
    margin = E.n + 1 if margin is None else margin
    tw = E.twists() or [0]
    return min(-max(tw) - margin, -E.n), max(-min(tw) + margin, 0)


def table(E: FormalBundle, window: tuple[int, int] | None = None) -> CohomologyTable:
    lo, hi = default_window(E) if window is None else window
    return CohomologyTable(E.n, lo, hi, tuple(bundle_h(E, t) for t in range(lo, hi + 1)))


def table_from_function(n: int, lo: int, hi: int, h) -> CohomologyTable:
    return CohomologyTable(n, lo, hi, tuple(tuple(h(t)) for t in range(lo, hi + 1)))


def check_middle_boundary(T: CohomologyTable) -> None:
    """Middle rows must vanish at both window edges."""
    for t in {T.lo, T.hi}:
        row = T.entry(t)
        bad = [s for s in range(1, T.n) if row[s]]
        if bad:
            raise WindowInsufficient(
                f"nonzero middle cohomology h^{bad[0]} at window boundary twist {t}",
                twist=t, degrees=bad, window=[T.lo, T.hi],
            )


def hset(T: CohomologyTable) -> HSet:
    check_middle_boundary(T)
    return frozenset(
        (t, s) for t, row in T.items() for s in range(1, T.n) if row[s]
    )


def hset_exact(E: FormalBundle) -> HSet:
    """``H(E)`` in closed form: ``Omega^p(c)`` contributes exactly ``(-c, p)``."""
    return frozenset((-s.twist, s.power) for s, _ in E if not s.is_line)


def serre_dual_table(T: CohomologyTable) -> CohomologyTable:
    """Row ``t`` becomes the reversed row ``-t`` of ``T``; the window is negated."""
    rows = tuple(tuple(reversed(T.entry(-t))) for t in range(-T.hi, -T.lo + 1))
    return CohomologyTable(T.n, -T.hi, -T.lo, rows)


def rank_from_table(T: CohomologyTable) -> int:
    """``n``-th finite difference of the Euler characteristic row."""
    n = T.n
    if T.hi - T.lo < n:
        raise WindowInsufficient(
            f"rank recovery needs {n + 1} twists, window has {T.hi - T.lo + 1}",
            window=[T.lo, T.hi],
        )
    return forward_difference([T.chi(T.lo + j) for j in range(n + 1)], n)


def tables_equal(a: CohomologyTable, b: CohomologyTable) -> bool:
    return a.n == b.n and a.window == b.window and a.rows == b.rows


def first_mismatch(a: CohomologyTable, b: CohomologyTable) -> int | None:
    for t in range(max(a.lo, b.lo), min(a.hi, b.hi) + 1):
        if a.entry(t) != b.entry(t):
            return t
    return None
