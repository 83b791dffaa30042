"""The Frobenius morphism ``F_m`` at the level of cohomology tables.

``F_m`` is affine and pulls ``O(k)`` back to ``O(mk)``, so the projection
formula gives ``h^j((F_m* E)(k)) = h^j(E(mk))``.  Nothing sheaf-level is
modeled.
"""
from __future__ import annotations


from .bundle import FormalBundle
from .cohomology import CohomologyTable, bundle_h, default_window


def pullback_line(k: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"Frobenius degree must be >= 1, got {m}")
    return m * k


def pushforward_window(E: FormalBundle, m: int) -> tuple[int, int]:
    """Twists ``k`` with ``mk`` inside ``E``'s default window, padded by ``n + 1``."""
    lo, hi = default_window(E)
    return lo // m - (E.n + 1), -(-hi // m) + (E.n + 1)


def pushforward_table(
    E: FormalBundle, m: int, window: tuple[int, int] | None = None
) -> CohomologyTable:
    if m < 1:
        raise ValueError(f"Frobenius degree must be >= 1, got {m}")
    lo, hi = pushforward_window(E, m) if window is None else window
    rows = tuple(bundle_h(E, pullback_line(k, m)) for k in range(lo, hi + 1))
    return CohomologyTable(E.n, lo, hi, rows)


def _regular_at(E: FormalBundle, m: int) -> bool:
    """``E(m)`` lives in degree 0 only and ``E(-m)`` in degree n only."""
    up = bundle_h(E, m)
    down = bundle_h(E, -m)
    return not any(up[1:]) and not any(down[:-1])


def _closed_form_threshold(E: FormalBundle) -> int:
    n = E.n
    best = 1
    for s, _ in E:
        c = s.twist
        if s.is_line:
            best = max(best, c + 1, -n - c)
        else:
            best = max(best, abs(c) + 1, s.power - n - c)
    return best


def m_threshold(E: FormalBundle) -> int:
    """Smallest ``m0 >= 1`` such that ``E(m)`` has only ``h^0`` and ``E(-m)``
    only ``h^n`` for every ``m >= m0``.

    Vanishing cohomology satisfies both conditions vacuously.  The per-summand
    closed form is re-certified by scanning ``[m0, m0 + n + 1]`` and checking
    that ``m0 - 1`` fails; any disagreement raises ``RuntimeError``.
    """
    if not E:
        raise ValueError("m_threshold of the zero bundle is undefined")
    m0 = _closed_form_threshold(E)
    for m in range(m0, m0 + E.n + 2):
        if not _regular_at(E, m):
            raise RuntimeError(f"closed-form threshold {m0} fails the scan at m={m} for {E}")
    if m0 > 1 and _regular_at(E, m0 - 1):
        raise RuntimeError(f"closed-form threshold {m0} for {E} is not minimal")
    return m0


def degree(n: int, m: int) -> int:
    """Rank multiplier of ``F_m*`` on ``P^n``."""
    return m**n


__all__ = [
    "pullback_line",
    "pushforward_table",
    "pushforward_window",
    "m_threshold",
    "degree",
]

