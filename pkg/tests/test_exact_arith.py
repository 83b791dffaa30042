import math

import pytest
from hypothesis import given, strategies as st

from frobsplit.exact_arith import binom, chi_line, forward_difference


@pytest.mark.parametrize("a,b,expected", [(5, 3, 10), (-1, 1, 0), (7, 2, 21), (3, 4, 0), (4, -1, 0), (0, 0, 1)])
def test_binom_values(a, b, expected):
    assert binom(a, b) == expected


@pytest.mark.parametrize("n,k,expected", [(2, 2, 6), (2, -1, 0), (2, -3, 1), (1, -2, -1), (3, -4, -1)])
def test_chi_line_values(n, k, expected):
    assert chi_line(n, k) == expected


def test_binom_pascal():
    for a in range(1, 61):
        for b in range(0, a + 1):
            assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)


def test_binom_is_big_int():
    assert binom(200, 100) == math.comb(200, 100)
    assert binom(200, 100) > 2**63


@pytest.mark.parametrize("n", range(1, 8))
def test_chi_line_branches(n):
    for k in range(-40, 41):
        if k >= 0:
            expected = binom(n + k, n)
        elif k <= -n - 1:
            expected = (-1) ** n * binom(-k - 1, n)
        else:
            expected = 0
        assert chi_line(n, k) == expected


@given(st.integers(1, 8), st.integers(-60, 60))
def test_chi_serre_duality(n, k):
    assert chi_line(n, k) == (-1) ** n * chi_line(n, -k - n - 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_chi_hyperplane_recursion(n):
    for k in range(-50, 51):
        assert chi_line(n, k) - chi_line(n, k - 1) == chi_line(n - 1, k)


def test_chi_line_rejects_dimension_zero():
    with pytest.raises(ValueError):
        chi_line(0, 1)


def test_forward_difference():
    # cubes: third difference is 3! = 6
    assert forward_difference([x**3 for x in range(-2, 2)], 3) == 6
    with pytest.raises(ValueError):
        forward_difference([1, 2], 2)
