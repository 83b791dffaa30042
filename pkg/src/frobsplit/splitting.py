"""Splitting of bundles whose middle cohomology satisfies condition (dagger).

``decompose`` reads a cohomology table and returns the multiplicities of
``Omega^s(-r)`` and ``O(k)`` summands.  Middle multiplicities are read off
directly (``a_{r,s} = h^s(E(r))``); line multiplicities come from inverting
the residual ``h^0`` and ``h^n`` rows with an ``(n+1)``-st difference, and
the answer is always re-checked by rebuilding the whole table.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bundle import FormalBundle, Line, Summand
from .cohomology import (
    CohomologyTable,
    bott_h,
    bundle_h,
    check_middle_boundary,
    first_mismatch,
    hset,
    rank_from_table,
    table,
)
from .errors import (
    AiMismatch,
    DaggerViolated,
    InconsistentTable,
    NotDirect1Shape,
    ReconstructionMismatch,
    WindowInsufficient,
)
from .exact_arith import binom
from .frobenius import pushforward_table


def check_dagger(H) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Ordered pairs ``((r, s), (r + t, s - t + 1))`` inside ``H`` with ``t >= 1``.

    An empty list means the condition holds.
    """
    points = set(H)
    bad = []
    for r, s in sorted(points):
        # s - t + 1 >= 1 is needed for the target to be a middle degree
        for t in range(1, s + 1):
            target = (r + t, s - t + 1)
            if target in points:
                bad.append(((r, s), target))
    return bad


@dataclass
class Decomposition:
    """``middle[(r, s)]`` counts ``Omega^s(-r)``; ``lines[k]`` counts ``O(k)``."""

    n: int
    middle: dict[tuple[int, int], int]
    lines: dict[int, int]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def rho(self) -> int:
        return len(self.middle)

    def to_bundle(self) -> FormalBundle:
        pairs = [(Summand(s, -r), a) for (r, s), a in self.middle.items()]
        pairs += [(Line(k), b) for k, b in self.lines.items()]
        return FormalBundle(self.n, tuple(pairs))

    def rank(self) -> int:
        return sum(a * binom(self.n, s) for (_, s), a in self.middle.items()) + sum(
            self.lines.values()
        )

    def sorted_middle(self):
        return sorted(self.middle.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def sorted_lines(self):
        return sorted(self.lines.items(), reverse=True)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "middle": [
                {"s": s, "twist": -r, "mult": a} for (r, s), a in self.sorted_middle()
            ],
            "lines": [{"twist": k, "mult": b} for k, b in self.sorted_lines()],
            "checks": {
                key: bool(self.checks.get(key, False))
                for key in ("rank", "chi", "reconstruction")
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Decomposition":
        middle = {(-e["twist"], e["s"]): e["mult"] for e in data["middle"]}
        lines = {e["twist"]: e["mult"] for e in data["lines"]}
        return cls(data["n"], middle, lines, dict(data.get("checks", {})))

    def __str__(self) -> str:
        return str(self.to_bundle())


def _residual_rows(T: CohomologyTable, middle) -> list[list[int]]:
    n = T.n
    res = []
    for t, row in T.items():
        row = list(row)
        for (r, s), a in middle.items():
            for q, v in enumerate(bott_h(n, s, t - r)):
                row[q] -= a * v
        if min(row) < 0:
            q = min(range(n + 1), key=lambda i: row[i])
            raise InconsistentTable(
                f"negative residual h^{q} = {row[q]} at twist {t} after removing "
                "the Omega summands",
                twist=t, degree=q, value=row[q],
            )
        if any(row[1:n]):
            raise InconsistentTable(
                f"middle cohomology at twist {t} not explained by Omega summands",
                twist=t,
            )
        res.append(row)
    return res


def _invert_lines(T: CohomologyTable, res: list[list[int]]) -> dict[int, int]:
    n, lo, hi = T.n, T.lo, T.hi
    if res[0][0]:
        raise WindowInsufficient(
            f"residual h^0 = {res[0][0]} at left boundary twist {lo}; widen the window",
            twist=lo, window=[lo, hi],
        )
    if res[-1][n]:
        raise WindowInsufficient(
            f"residual h^{n} = {res[-1][n]} at right boundary twist {hi}; widen the window",
            twist=hi, window=[lo, hi],
        )

    def f(t):  # residual h^0, zero left of the window (h^0 grows with t)
        return res[t - lo][0] if lo <= t <= hi else 0

    def g(t):  # residual h^n, zero right of the window
        return res[t - lo][n] if lo <= t <= hi else 0

    coeffs = [(-1) ** j * binom(n + 1, j) for j in range(n + 2)]
    from_h0 = {}
    for start in range(lo, hi + 1):
        a = -start
        from_h0[a] = sum(c * f(start - j) for j, c in enumerate(coeffs))
    from_hn = {}
    for first in range(lo, hi + 1):
        # O(a) first shows in h^n at twist -a - n - 1
        a = -first - n - 1
        from_hn[a] = sum(c * g(first + j) for j, c in enumerate(coeffs))

    lines = {}
    for a in sorted(set(from_h0) | set(from_hn)):
        vals = {v for v in (from_h0.get(a), from_hn.get(a)) if v is not None}
        if len(vals) > 1:
            raise InconsistentTable(
                f"h^0 and h^{n} inversions disagree for O({a}): "
                f"{from_h0[a]} vs {from_hn[a]}",
                twist=a,
            )
        b = vals.pop()
        if b < 0:
            raise InconsistentTable(
                f"binomial inversion gives negative multiplicity {b} for O({a})",
                twist=a, mult=b,
            )
        if b:
            lines[a] = b
    return lines


def decompose(T: CohomologyTable) -> Decomposition:
    """Decompose a cohomology table satisfying condition (dagger).

    Raises ``DaggerViolated``, ``WindowInsufficient``, ``InconsistentTable``
    or ``ReconstructionMismatch``; negative multiplicities are never clamped.
    """
    check_middle_boundary(T)
    H = hset(T)
    bad = check_dagger(H)
    if bad:
        raise DaggerViolated(bad)
    middle = {(r, s): T.entry(r)[s] for r, s in H}
    res = _residual_rows(T, middle)
    lines = _invert_lines(T, res)
    D = Decomposition(T.n, middle, lines)

    rebuilt = table(D.to_bundle(), T.window)
    mismatch = first_mismatch(rebuilt, T)
    if mismatch is not None:
        raise ReconstructionMismatch(
            f"reconstructed table differs at twist {mismatch}: "
            f"{rebuilt.entry(mismatch)} vs {T.entry(mismatch)}",
            twist=mismatch,
        )
    E = D.to_bundle()
    D.checks["reconstruction"] = True
    D.checks["chi"] = all(E.euler_char(t) == T.chi(t) for t in T.twists)
    if T.hi - T.lo >= T.n:
        D.checks["rank"] = rank_from_table(T) == D.rank()
    else:
        D.checks["rank"] = False
    if not D.checks["chi"] or (T.hi - T.lo >= T.n and not D.checks["rank"]):
        raise ReconstructionMismatch("rank or Euler characteristic not conserved")
    return D


@dataclass
class PushforwardReport:
    """``F_m* E`` as ``sum Omega^i^{a_i} + sum_{j=1..n} O(-j)^{b_j}``."""

    n: int
    m: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    decomposition: Decomposition

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "a": list(self.a), "b": list(self.b)}

    def __str__(self) -> str:
        parts = []
        for i, ai in enumerate(self.a):
            if ai:
                parts.append(f"Omega^{i}" + (f"^{ai}" if ai > 1 else ""))
        for j, bj in enumerate(self.b, start=1):
            if bj:
                parts.append(f"O({-j})" + (f"^{bj}" if bj > 1 else ""))
        return " + ".join(parts) or "0"


def decompose_pushforward(
    E: FormalBundle, m: int, window: tuple[int, int] | None = None
) -> PushforwardReport:
    n = E.n
    T = pushforward_table(E, m, window)
    D = decompose(T)
    stray_middle = [key for key in D.middle if key[0] != 0]
    stray_lines = [k for k in D.lines if not -n - 1 <= k <= 0]
    if stray_middle or stray_lines:
        raise NotDirect1Shape(
            f"F_{m}* of {E} has summands outside Omega^i, O(-1..-{n}): "
            f"middle twists {sorted(-r for r, _ in stray_middle)}, "
            f"line twists {sorted(stray_lines)}",
            middle=[list(k) for k in sorted(stray_middle)], lines=sorted(stray_lines),
        )
    a = [D.lines.get(0, 0)]
    a += [D.middle.get((0, s), 0) for s in range(1, n)]
    a.append(D.lines.get(-n - 1, 0))
    b = tuple(D.lines.get(-j, 0) for j in range(1, n + 1))
    h = bundle_h(E)
    if tuple(a) != h:
        raise AiMismatch(f"a = {a} but h^*(E) = {h} for {E}, m = {m}")
    return PushforwardReport(n, m, tuple(a), b, D)


def pushforward_splitting(
    E: FormalBundle, m: int, window: tuple[int, int] | None = None
) -> Decomposition | None:
    """Decomposition type of ``F_m* E`` if its table satisfies (dagger), else None.

    Independent of ``m_threshold``: the pushforward often splits well below
    the threshold, and the shape need not be the ``Omega^i, O(-j)`` one.
    """
    try:
        return decompose(pushforward_table(E, m, window))
    except DaggerViolated:
        return None


def klyachko_bound(n: int, rank: int) -> set[int]:
    """Degrees ``r`` where ``rank < C(n, r)`` forces ``H^r = 0`` for toric bundles."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    return {r for r in range(n + 1) if rank < binom(n, r)}
