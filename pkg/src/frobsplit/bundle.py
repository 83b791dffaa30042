"""Formal direct sums of line bundles and twisted exterior powers on ``P^n``.

A :class:`Summand` is ``O(k)`` (stored with ``power == 0``) or
``Omega^p(t)`` with ``1 <= p <= n-1``.  ``Omega^0(t)`` and ``Omega^n(t)`` are
folded into line bundles at construction, so every module downstream can
assume the canonical form.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BundleParseError, ZeroSummand
from .exact_arith import binom, chi_line


@dataclass(frozen=True, order=True)
class Summand:
    power: int
    twist: int

    @property
    def is_line(self) -> bool:
        return self.power == 0

    def rank(self, n: int) -> int:
        return 1 if self.is_line else binom(n, self.power)

    def __str__(self) -> str:
        if self.is_line:
            return f"O({self.twist})"
        return f"Omega^{self.power}({self.twist})"


def Line(k: int) -> Summand:
    return Summand(0, k)


def Omega(p: int, t: int) -> Summand:
    """Raw constructor; use :func:`normalize` when ``p`` may be ``0`` or ``n``."""
    return Summand(p, t)


def normalize(n: int, power: int, twist: int) -> Summand:
    """Canonical summand for ``Omega^power(twist)`` on ``P^n``."""
    if not 0 <= power <= n:
        raise ZeroSummand(f"Omega^{power} is zero on P^{n} (power outside [0, {n}])")
    if power == 0:
        return Line(twist)
    if power == n:
        return Line(twist - n - 1)
    return Summand(power, twist)


@dataclass(frozen=True)
class FormalBundle:
    """Finite multiset of canonical summands on ``P^n``.

    ``items`` is kept sorted by ``(power, twist)`` with merged, strictly
    positive multiplicities, so structural equality is bundle equality.
    """

    n: int
    items: tuple[tuple[Summand, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        merged: Counter = Counter()
        for s, mult in self.items:
            if not isinstance(s, Summand):
                raise TypeError(f"expected Summand, got {s!r}")
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {s}")
            if not s.is_line and not 1 <= s.power <= self.n - 1:
                s = normalize(self.n, s.power, s.twist)
            merged[s] += mult
        canon = tuple(sorted((s, m) for s, m in merged.items() if m > 0))
        object.__setattr__(self, "items", canon)

    @classmethod
    def of(cls, n: int, *summands: Summand | tuple[Summand, int]) -> "FormalBundle":
        """``FormalBundle.of(2, Line(0), (Line(-1), 3))``"""
        pairs = [s if isinstance(s, tuple) else (s, 1) for s in summands]
        return cls(n, tuple(pairs))

    @classmethod
    def zero(cls, n: int) -> "FormalBundle":
        return cls(n, ())

    def __iter__(self) -> Iterator[tuple[Summand, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __add__(self, other: "FormalBundle") -> "FormalBundle":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: P^{self.n} vs P^{other.n}")
        return FormalBundle(self.n, self.items + other.items)

    def multiplicity(self, s: Summand) -> int:
        return dict(self.items).get(s, 0)

    def twist(self, t: int) -> "FormalBundle":
        return FormalBundle(
            self.n, tuple((Summand(s.power, s.twist + t), m) for s, m in self.items)
        )

    def dual(self) -> "FormalBundle":
        n = self.n
        out = []
        for s, m in self.items:
            if s.is_line:
                out.append((Line(-s.twist), m))
            else:
                out.append((normalize(n, n - s.power, n + 1 - s.twist), m))
        return FormalBundle(n, tuple(out))

    def rank(self) -> int:
        return sum(m * s.rank(self.n) for s, m in self.items)

    def euler_char(self, t: int = 0) -> int:
        """``chi(E(t))``, from the Koszul expansion of each exterior power."""
        n = self.n
        total = 0
        for s, m in self.items:
            k = s.twist + t
            p = s.power
            total += m * sum(
                (-1) ** i * binom(n + 1, p - i) * chi_line(n, k - p + i)
                for i in range(p + 1)
            )
        return total

    def twists(self) -> list[int]:
        return [s.twist for s, _ in self.items]

    def __str__(self) -> str:
        if not self.items:
            return "0"
        parts = [str(s) if m == 1 else f"{s}^{m}" for s, m in self.items]
        return " + ".join(parts)

    # serialization

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "summands": [
                {"omega": s.power, "twist": s.twist, "mult": m} for s, m in self.items
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "FormalBundle":
        if not isinstance(data, dict):
            raise BundleParseError("bundle must be a JSON object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise BundleParseError(f"'n' must be an integer >= 1, got {n!r}")
        raw = data.get("summands", [])
        if not isinstance(raw, list):
            raise BundleParseError("'summands' must be a list")
        pairs = []
        for idx, entry in enumerate(raw):
            if not isinstance(entry, dict):
                raise BundleParseError("expected an object", idx)
            unknown = set(entry) - {"omega", "twist", "mult"}
            if unknown:
                raise BundleParseError(f"unknown field(s) {sorted(unknown)}", idx)
            vals = {}
            for key, default in (("omega", None), ("twist", None), ("mult", 1)):
                v = entry.get(key, default)
                if not isinstance(v, int) or isinstance(v, bool):
                    raise BundleParseError(f"'{key}' must be an integer, got {v!r}", idx)
                vals[key] = v
            if vals["mult"] < 1:
                raise BundleParseError(f"'mult' must be >= 1, got {vals['mult']}", idx)
            try:
                s = normalize(n, vals["omega"], vals["twist"])
            except ZeroSummand as exc:
                raise BundleParseError(str(exc), idx) from None
            pairs.append((s, vals["mult"]))
        return cls(n, tuple(pairs))

    @classmethod
    def from_json(cls, text: str) -> "FormalBundle":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BundleParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def direct_sum(bundles: Iterable[FormalBundle]) -> FormalBundle:
    bundles = list(bundles)
    if not bundles:
        raise ValueError("direct_sum of nothing: dimension unknown")
    out = bundles[0]
    for b in bundles[1:]:
        out = out + b
    return out
