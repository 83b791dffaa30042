"""Exit criteria.  Every tolerance is exact equality; runtimes are wall clock.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``; one PASS/FAIL line is printed per
criterion.
"""
from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest

from frobsplit.beilinson import corner_ranks
from frobsplit.bundle import FormalBundle, Line, Omega, normalize
from frobsplit.cohomology import bott_h, bundle_h, hset_exact, table
from frobsplit.errors import DaggerViolated, InconsistentTable
from frobsplit.exact_arith import binom
from frobsplit.frobenius import m_threshold, pushforward_table
from frobsplit.oracles import koszul_cech, thomsen_counts, thomsen_enumerate
from frobsplit.splitting import check_dagger, decompose, decompose_pushforward, klyachko_bound
from frobsplit.cohomology import CohomologyTable

from conftest import ACCEPTANCE_LINES
from strategies import dagger_bundles, random_bundle

SEED_PUSHFORWARD = 1101
SEED_ROUND_TRIP = 1202
SEED_CORNERS = 803
SEED_KLYACHKO = 904


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"runtime {elapsed:.2f}s exceeds {limit}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def _conserved(E_rank, chi, D, twists) -> bool:
    out = D.to_bundle()
    return out.rank() == E_rank and all(out.euler_char(t) == chi(t) for t in twists)


def test_01_p5_pushforward_example():
    with criterion(1, "F_2*(Omega^3(3)) on P^5 = O(-1)^84 + O(-2)^216 + O(-3)^20", limit=1.0):
        rep = decompose_pushforward(FormalBundle.of(5, Omega(3, 3)), 2)
        D = rep.decomposition
        assert D.middle == {}
        assert D.lines == {-1: 84, -2: 216, -3: 20}
        assert rep.a == (0,) * 6 and rep.b == (84, 216, 20, 0, 0)


def test_02_p5_threshold():
    with criterion(2, "m(Omega^3(3) on P^5) = 4, witnessed by h^3(E(-3)) = 1", limit=1.0):
        E = FormalBundle.of(5, Omega(3, 3))
        assert m_threshold(E) == 4
        assert bundle_h(E, -3)[3] == 1


def test_03_bott_vs_koszul_cech():
    with criterion(3, "bott_h = koszul_cech, n in 1..3, 0<=p<=n, |k|<=6", limit=120.0):
        for n in (1, 2, 3):
            for p in range(n + 1):
                for k in range(-6, 7):
                    assert koszul_cech(n, p, k) == bott_h(n, p, k), (n, p, k)


def test_04_thomsen_triple_agreement():
    with criterion(4, "thomsen counts = enumeration = decompose(F_m* O(d)); sum = m^n", limit=60.0):
        for n in (1, 2, 3):
            for m in (1, 2, 3, 4):
                for d in range(-12, 13):
                    closed = thomsen_counts(n, m, d).counts
                    enum = thomsen_enumerate(n, m, d).counts
                    E = FormalBundle.of(n, Line(d))
                    T = pushforward_table(E, m)
                    D = decompose(T)
                    assert D.middle == {}
                    assert closed == enum == D.lines, (n, m, d)
                    assert sum(closed.values()) == m**n


def test_05_pushforward_shape():
    with criterion(5, "a_i = h^i(E), lines in {0..-n-1}, 100 random E, m = m(E)", limit=60.0):
        rng = random.Random(SEED_PUSHFORWARD)
        print(f"seed {SEED_PUSHFORWARD}")
        for _ in range(100):
            E = random_bundle(rng, n_max=4, max_summands=5, max_twist=5)
            m = m_threshold(E)
            rep = decompose_pushforward(E, m)
            assert rep.a == bundle_h(E)
            n = E.n
            assert all(-n - 1 <= k <= 0 for k in rep.decomposition.lines)
            assert all(r == 0 for r, _ in rep.decomposition.middle)
            for s in range(1, n):
                assert rep.decomposition.middle.get((0, s), 0) == bundle_h(E)[s]


def test_06_dagger_round_trip():
    with criterion(6, "decompose(table(E)) = E for 200 random (dagger) bundles", limit=60.0):
        print(f"seed {SEED_ROUND_TRIP}")
        for E in dagger_bundles(SEED_ROUND_TRIP, 200, n_max=5, max_summands=5, max_twist=6):
            T = table(E)
            D = decompose(T)
            assert D.to_bundle() == E
            for (r, s), a in D.middle.items():
                assert a == T.entry(r)[s]


def test_07_conservation():
    with criterion(7, "rank and chi conserved; chi(F_m*E(k)) = chi(E(mk))"):
        for E in dagger_bundles(SEED_ROUND_TRIP, 200, n_max=5, max_summands=5, max_twist=6):
            T = table(E)
            assert _conserved(E.rank(), E.euler_char, decompose(T), T.twists)
        rng = random.Random(SEED_PUSHFORWARD)
        for _ in range(100):
            E = random_bundle(rng, n_max=4, max_summands=5, max_twist=5)
            for m in sorted({1, 2, m_threshold(E)}):
                T = pushforward_table(E, m)
                for k in T.twists:
                    assert T.chi(k) == E.euler_char(m * k)
                try:
                    D = decompose(T)
                except DaggerViolated:
                    continue
                assert _conserved(m**E.n * E.rank(), lambda k: E.euler_char(m * k), D, T.twists)
        for n in (1, 2, 3):
            for m in (1, 2, 3, 4):
                for d in range(-12, 13):
                    E = FormalBundle.of(n, Line(d))
                    T = pushforward_table(E, m)
                    assert _conserved(m**n, lambda k: E.euler_char(m * k), decompose(T), T.twists)


def _admissible(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 5)
        pairs = []
        for _ in range(rng.randint(1, 5)):
            p = rng.randint(0, n)
            t = rng.randint(-5, 5)
            if 1 <= p <= n - 1:
                t = p + rng.randint(0, 3)  # keeps H(E) inside {r + s <= 0}
            pairs.append((normalize(n, p, t), rng.randint(1, 3)))
        E = FormalBundle(n, tuple(pairs))
        if not check_dagger(hset_exact(E)):
            out.append(E)
    return out


def test_08_spectral_bookkeeping():
    with criterion(8, "corner ranks: diagonal conservation, agreement, F_2*O(-6) = (0,4)", limit=10.0):
        print(f"seed {SEED_CORNERS}")
        for E in _admissible(SEED_CORNERS, 50):
            n = E.n
            T = table(E)
            c00, cnn = corner_ranks(T, E.rank())
            diagonal = sum(T.entry(-s)[s] * binom(n, s) for s in range(1, n))
            assert c00 + cnn + diagonal == E.rank()
            D = decompose(T)
            expect00 = sum(b for k, b in D.lines.items() if k >= 0) + sum(
                a * binom(n, s) for (r, s), a in D.middle.items() if -r > s
            )
            expectnn = sum(b for k, b in D.lines.items() if k < 0)
            assert (c00, cnn) == (expect00, expectnn)
        T = pushforward_table(FormalBundle.of(2, Line(-6)), 2)
        assert corner_ranks(T) == (0, 4)
        assert thomsen_counts(2, 2, -6).counts == {-3: 1, -4: 3}


def test_09_klyachko():
    with criterion(9, "rank < C(n,r) => h^r(E) = 0 on 100 random formal bundles", limit=10.0):
        rng = random.Random(SEED_KLYACHKO)
        print(f"seed {SEED_KLYACHKO}")
        checked = 0
        while checked < 100:
            E = random_bundle(rng, n_min=3, n_max=7, max_summands=4, max_twist=6)
            forced = klyachko_bound(E.n, E.rank())
            if not forced:
                continue
            h = bundle_h(E)
            assert all(h[r] == 0 for r in forced), (E, forced, h)
            checked += 1


def test_10_negative_controls():
    with criterion(10, "refuses (dagger) violation and negative inversion"):
        E = FormalBundle.of(3, Omega(2, 0), Omega(1, -2))
        with pytest.raises(DaggerViolated) as info:
            decompose(table(E))
        assert ((0, 2), (2, 1)) in info.value.pairs
        # nonnegative, chi-consistent table of the formal sum O(0) + O(2) - O(1)
        rows = tuple(
            tuple(a + b - c for a, b, c in zip(*(bundle_h(FormalBundle.of(1, Line(d)), t) for d in (0, 2, 1))))
            for t in range(-6, 5)
        )
        with pytest.raises(InconsistentTable, match="negative multiplicity -1 for O\\(1\\)"):
            decompose(CohomologyTable(1, -6, 4, rows))
        # same defect on P^3 with a middle summand present
        base = table(FormalBundle.of(3, Omega(1, 0), Line(0)))
        rows = [list(r) for r in base.rows]
        for t in base.twists:
            if t >= 1:
                rows[t - base.lo][0] -= 1  # pretend O(1) was subtracted
        with pytest.raises(InconsistentTable):
            decompose(CohomologyTable(3, base.lo, base.hi, tuple(map(tuple, rows))))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
