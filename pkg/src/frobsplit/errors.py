"""Exception hierarchy.

``Refusal`` subclasses are mathematical refusals: the input violates a
contract of the algorithm.  The CLI maps them to exit code 2 and prints
``to_json()`` on stderr.
"""
from __future__ import annotations

import json
from typing import Any


class Refusal(Exception):
    contract = "refusal"

    def __init__(self, message: str, **data: Any):
        super().__init__(message)
        self.message = message
        self.data = data

    def to_json(self) -> str:
        return json.dumps(
            {"error": self.contract, "message": self.message, "data": self.data},
            sort_keys=True,
        )


class DaggerViolated(Refusal):
    contract = "dagger violated"

    def __init__(self, pairs):
        pairs = [tuple(map(tuple, p)) for p in pairs]
        shown = ", ".join(f"({a}, {b})" for a, b in pairs[:8])
        super().__init__(
            f"condition (dagger) violated by {len(pairs)} pair(s): {shown}",
            pairs=[[list(a), list(b)] for a, b in pairs],
        )
        self.pairs = pairs


class WindowInsufficient(Refusal):
    contract = "window insufficient"


class InconsistentTable(Refusal):
    """The table is not the cohomology of a (dagger)-decomposable bundle."""

    contract = "table is not the cohomology of a (dagger)-decomposable bundle"


class ReconstructionMismatch(Refusal):
    contract = "window insufficient or inconsistent table"


class HypothesisViolated(Refusal):
    contract = "hypothesis violated"


class BudgetExceeded(Refusal):
    contract = "budget exceeded"


class NotDirect1Shape(Refusal):
    """Pushforward decomposed, but not into the Omega^i / O(-j) shape."""

    contract = "not of Omega^i + O(-j) shape"


class AiMismatch(AssertionError):
    """a_i != h^i(E) after a successful pushforward decomposition (a bug)."""


class ZeroSummand(ValueError):
    """Exterior power outside [0, n]."""


class BundleParseError(ValueError):
    def __init__(self, message: str, index: int | None = None):
        if index is not None:
            message = f"summand {index}: {message}"
        super().__init__(message)
        self.index = index
