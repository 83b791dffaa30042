"""Dimension-level bookkeeping for Beilinson's spectral sequence.

``E_1^{r,s} = H^s(E(r)) (x) Omega^{-r}(-r)`` on the square
``-n <= r <= 0 <= s <= n``.  Under condition (dagger) the degeneration rules for this
sequence pin down which differentials can be nonzero, the surviving
diagonal, the ranks along the bottom row and, when the middle support lies
in ``{r + s <= 0}``, the two corner terms.  Ranks that depend on unknown
maps are not computed.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .bundle import Summand, normalize
from .cohomology import CohomologyTable, hset, rank_from_table
from .errors import DaggerViolated, HypothesisViolated, InconsistentTable, WindowInsufficient
from .exact_arith import binom
from .splitting import check_dagger

POSSIBLE = "possibly-nonzero"
ZERO = "forced-zero"


@dataclass(frozen=True)
class Cell:
    mult: int
    label: Summand
    rank: int  # mult * rank(label)


@dataclass
class E1Page:
    n: int
    cells: dict[tuple[int, int], Cell]

    def mult(self, r: int, s: int) -> int:
        cell = self.cells.get((r, s))
        return cell.mult if cell else 0

    def rank(self, r: int, s: int) -> int:
        cell = self.cells.get((r, s))
        return cell.rank if cell else 0

    def render(self) -> str:
        n = self.n
        texts = {}
        for (r, s), cell in self.cells.items():
            texts[r, s] = f"{cell.mult}·{cell.label}" if cell.mult else "·"
        width = max(len(t) for t in texts.values())
        lines = []
        for s in range(n, -1, -1):
            row = " ".join(texts[r, s].rjust(width) for r in range(-n, 1))
            lines.append(f"s={s:<2} {row}")
        footer = " ".join(f"r={r}".rjust(width) for r in range(-n, 1))
        lines.append("     " + footer)
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "s", "mult", "label"])
        for s in range(self.n + 1):
            for r in range(-self.n, 1):
                cell = self.cells[r, s]
                w.writerow([r, s, cell.mult, str(cell.label)])
        return buf.getvalue()


def e1_page(T: CohomologyTable) -> E1Page:
    n = T.n
    if T.lo > -n or T.hi < 0:
        raise WindowInsufficient(
            f"E_1 page needs twists [-{n}, 0], window is [{T.lo}, {T.hi}]",
            window=[T.lo, T.hi],
        )
    cells = {}
    for r in range(-n, 1):
        label = normalize(n, -r, -r)
        row = T.entry(r)
        for s in range(n + 1):
            cells[r, s] = Cell(row[s], label, row[s] * label.rank(n))
    return E1Page(n, cells)


@dataclass(frozen=True)
class Arrow:
    source: tuple[int, int]
    target: tuple[int, int]
    page: int
    status: str


def _require_dagger(H) -> None:
    bad = check_dagger(H)
    if bad:
        raise DaggerViolated(bad)


def classify_arrows(P: E1Page, H) -> list[Arrow]:
    """Every differential ``d_t: E_t^{r,s} -> E_t^{r+t, s-t+1}`` inside the square.

    Middle-row cells can only map to the bottom row (page ``s + 1``, needs
    ``r + s < 0``) and only receive from the top row (page ``n - s + 1``,
    needs ``r + s > 0``).  Arrows touching an empty cell are forced zero.
    """
    _require_dagger(H)
    n = P.n
    arrows = []
    for (r, s) in sorted(P.cells):
        for t in range(1, s + 2):
            tr, ts = r + t, s - t + 1
            if tr > 0:
                break
            status = POSSIBLE
            if P.mult(r, s) == 0 or P.mult(tr, ts) == 0:
                status = ZERO
            elif 1 <= s <= n - 1 and ts != 0:
                status = ZERO
            elif 1 <= ts <= n - 1 and s != n:
                status = ZERO
            arrows.append(Arrow((r, s), (tr, ts), t, status))
    return arrows


def bottom_row_dims(T: CohomologyTable) -> dict[tuple[int, int], int]:
    """``rank E_t^{-k,0}`` for ``1 <= k <= n`` and ``2 <= t <= n + 1``.

    From the short exact sequences ``0 -> E_1^{-k-t,t-1} -> E_t^{-k,0} ->
    E_{t+1}^{-k,0} -> 0`` and ``E_inf^{-k,0} = 0``.
    """
    _require_dagger(hset(T))
    n = T.n
    P = e1_page(T)
    dims = {}
    for k in range(1, n + 1):
        for t in range(2, n + 2):
            dims[k, t] = sum(P.rank(-k - u, u - 1) for u in range(t, n + 2) if -k - u >= -n)
    return dims


def corner_ranks(T: CohomologyTable, rank: int | None = None) -> tuple[int, int]:
    """``(rank E_inf^{0,0}, rank E_inf^{-n,n})``; needs (dagger) and
    ``H(E)`` inside ``{r + s <= 0}``."""
    n = T.n
    H = hset(T)
    _require_dagger(H)
    above = sorted((r, s) for r, s in H if r + s > 0)
    if above:
        raise HypothesisViolated(
            f"middle cohomology above the diagonal at {above}", points=[list(p) for p in above]
        )
    if rank is None:
        rank = rank_from_table(T)
    P = e1_page(T)
    top = sum(
        (-1) ** j * P.mult(-n + j, n) * binom(n, n - j) for j in range(n + 1)
    )
    diagonal = sum(P.mult(-s, s) * binom(n, s) for s in range(1, n))
    corner = rank - diagonal - top
    if top < 0 or corner < 0:
        raise InconsistentTable(
            f"negative corner rank: E_inf^(0,0) = {corner}, E_inf^(-n,n) = {top}",
            corner00=corner, cornernn=top,
        )
    return corner, top


@dataclass
class PageReport:
    n: int
    arrows: list[Arrow]
    diagonal: dict[int, int]  # s -> rank E_inf^{-s,s} = E_1^{-s,s}, 1 <= s <= n-1
    bottom_row: dict[tuple[int, int], int]
    corners: tuple[int, int] | None = None
    bottom00: dict[int, int] | None = None
    undetermined: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "arrows": [
                {"source": list(a.source), "target": list(a.target), "page": a.page,
                 "status": a.status}
                for a in self.arrows
            ],
            "diagonal": {str(s): v for s, v in sorted(self.diagonal.items())},
            "bottom_row": [
                {"k": k, "t": t, "rank": v} for (k, t), v in sorted(self.bottom_row.items())
            ],
            "corners": list(self.corners) if self.corners else None,
            "bottom00": {str(t): v for t, v in sorted(self.bottom00.items())}
            if self.bottom00 is not None
            else None,
            "undetermined": self.undetermined,
        }


def page_report(T: CohomologyTable, rank: int | None = None) -> PageReport:
    n = T.n
    H = hset(T)
    P = e1_page(T)
    arrows = classify_arrows(P, H)
    diagonal = {s: P.rank(-s, s) for s in range(1, n)}
    bottom = bottom_row_dims(T)
    report = PageReport(n, arrows, diagonal, bottom)
    try:
        report.corners = corner_ranks(T, rank)
    except HypothesisViolated as exc:
        report.undetermined.append(f"corners: {exc.message}")
        report.undetermined.append("bottom (0,0) cell: corner hypothesis fails")
    else:
        report.bottom00 = {
            t: report.corners[0]
            + sum(P.rank(-u, u - 1) for u in range(t, n + 2) if u <= n)
            for t in range(2, n + 2)
        }
    report.undetermined.append("bottom row k=0 and top row at page 1: depend on map ranks")
    return report
