"""Exact integer combinatorics.

Two conventions live here on purpose:

* :func:`binom` is the combinatorial binomial, zero outside ``0 <= b <= a``.
* :func:`chi_line` is the polynomial ``(k+1)...(k+n)/n!`` evaluated at any
  integer ``k`` (the Euler characteristic of ``O(k)`` on ``P^n``).

Mixing them up is the usual source of sign errors, so nothing else in the
package should build Euler characteristics out of ``binom`` directly.
"""
from __future__ import annotations

import math


def binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def chi_line(n: int, k: int) -> int:
    """Euler characteristic of ``O(k)`` on ``P^n``."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return num // math.factorial(n)


def forward_difference(values, order: int) -> int:
    """``order``-th forward difference of ``values`` at its first entry."""
    values = list(values)
    if len(values) < order + 1:
        raise ValueError(f"need {order + 1} values, got {len(values)}")
    return sum(
        (-1) ** (order - j) * math.comb(order, j) * values[j] for j in range(order + 1)
    )
