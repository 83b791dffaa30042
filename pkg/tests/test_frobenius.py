import random

import pytest
from hypothesis import given, settings

from frobsplit.bundle import FormalBundle, Line, Omega
from frobsplit.cohomology import bundle_h, hset, rank_from_table, table
from frobsplit.frobenius import m_threshold, pullback_line, pushforward_table

from strategies import bundles, random_bundle


def test_pullback_line():
    assert pullback_line(3, 2) == 6
    assert pullback_line(7, 1) == 7
    assert pullback_line(-1, 5) == -5
    with pytest.raises(ValueError):
        pullback_line(1, 0)


def test_pushforward_examples():
    assert pushforward_table(FormalBundle.of(1, Line(0)), 2, (1, 1)).entry(1)[0] == 3
    E = FormalBundle.of(5, Omega(3, 3))
    assert pushforward_table(E, 2, (1, 1)).entry(1)[0] == 84


@given(bundles())
def test_identity_pushforward(E):
    assert pushforward_table(E, 1, (-8, 8)) == table(E, (-8, 8))


def test_chi_conservation_and_rank_scaling():
    rng = random.Random(11)
    for _ in range(60):
        E = random_bundle(rng, n_max=3)
        for m in range(1, 5):
            T = pushforward_table(E, m)
            for k in T.twists:
                assert T.chi(k) == E.euler_char(m * k)
            assert rank_from_table(T) == m**E.n * E.rank()


def test_functoriality():
    rng = random.Random(12)
    for _ in range(40):
        E = random_bundle(rng, n_max=3)
        for m, m2 in [(2, 2), (2, 3), (3, 1)]:
            assert pushforward_table(E, m * m2, (-4, 4)).rows == tuple(
                bundle_h(E, m * m2 * k) for k in range(-4, 4 + 1)
            )
            # F_{m'} after F_m: row k of the composite is row m'k of F_m*
            inner = pushforward_table(E, m, (-4 * m2, 4 * m2))
            assert pushforward_table(E, m * m2, (-4, 4)).rows == tuple(
                inner.entry(m2 * k) for k in range(-4, 5)
            )


@pytest.mark.parametrize(
    "E,expected",
    [
        (FormalBundle.of(5, Omega(3, 3)), 4),
        (FormalBundle.of(2, Omega(1, 0)), 1),
        (FormalBundle.of(3, Line(5)), 6),
        (FormalBundle.of(2, Line(-1)), 1),
    ],
)
def test_m_threshold_examples(E, expected):
    assert m_threshold(E) == expected


def test_m_threshold_lower_bound_witness():
    E = FormalBundle.of(5, Omega(3, 3))
    assert bundle_h(E, -3)[3] == 1


def test_m_threshold_zero_bundle():
    with pytest.raises(ValueError):
        m_threshold(FormalBundle.zero(2))


@settings(max_examples=60)
@given(bundles(max_twist=5))
def test_vertical_line_concentration(E):
    if not E:
        return
    m0 = m_threshold(E)
    for m in (m0, m0 + 1):
        assert {r for r, _ in hset(pushforward_table(E, m))} <= {0}


def test_m_threshold_is_minimal_by_scan():
    rng = random.Random(13)
    for _ in range(100):
        E = random_bundle(rng)
        m0 = m_threshold(E)

        def regular(m):
            up, down = bundle_h(E, m), bundle_h(E, -m)
            return not any(up[1:]) and not any(down[:-1])

        assert all(regular(m) for m in range(m0, m0 + 15))
        assert m0 == 1 or not regular(m0 - 1)
