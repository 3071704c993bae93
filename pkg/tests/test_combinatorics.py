import math
from fractions import Fraction

import numpy as np
import pytest

from knapsack_dnc.combinatorics import (
    Composition,
    SizeGuard,
    binom,
    composition_count,
    enumerate_compositions,
    hockey_stick_holds,
    index_shift_holds,
    log_binom,
    mean_odd_even_difference,
    odd_even_difference,
    odd_even_difference_sum,
    odd_even_discrepancies,
    odd_even_sums,
    printed_odd_even_difference,
)


def test_binom_edges():
    assert binom(5, 2) == 10
    assert binom(5, 0) == 1
    assert binom(5, 6) == 0
    assert binom(5, -1) == 0


def test_log_binom_matches_exact():
    assert log_binom(40, 17) == pytest.approx(math.log(math.comb(40, 17)))
    values = log_binom(np.array([10, 20, 30]), np.array([3, 10, 0]))
    expected = [math.log(math.comb(10, 3)), math.log(math.comb(20, 10)), 0.0]
    assert values == pytest.approx(expected)
    with pytest.raises(ValueError):
        log_binom(3, 4)


def test_enumerate_compositions():
    compositions = list(enumerate_compositions(4, 2))
    assert [c.parts for c in compositions] == [(1, 3), (2, 2), (3, 1)]
    assert len(list(enumerate_compositions(9, 4))) == composition_count(9, 4) == 56
    assert all(c.n == 9 for c in enumerate_compositions(9, 4))


def test_enumeration_guards():
    with pytest.raises(ValueError):
        list(enumerate_compositions(3, 4))
    with pytest.raises(SizeGuard) as error:
        list(enumerate_compositions(30, 10, limit=1000))
    assert error.value.count == binom(29, 9)


def test_composition_parts_are_positive():
    assert Composition((2, 1, 3)).odd_sum == 5
    assert Composition((2, 1, 3)).even_sum == 1
    with pytest.raises(ValueError):
        Composition((2, 0))


@pytest.mark.parametrize("n", range(1, 13))
def test_odd_even_difference_brute_force(n):
    for m in range(1, n + 1):
        odd_total, even_total = odd_even_sums(n, m)
        assert odd_total - even_total == odd_even_difference(n, m)
        assert odd_even_difference_sum(n, m) == odd_even_difference(n, m)


def test_mean_odd_even_difference():
    assert mean_odd_even_difference(9, 3) == Fraction(3)
    assert mean_odd_even_difference(10, 3) == Fraction(10, 3)
    assert mean_odd_even_difference(10, 4) == 0


def test_printed_form_disagrees():
    assert printed_odd_even_difference(1, 1) == odd_even_difference(1, 1)
    assert printed_odd_even_difference(4, 1) == 10
    assert odd_even_difference(4, 1) == 4


def test_discrepancy_rows():
    rows = odd_even_discrepancies(6)
    assert all(row["difference"] == row["closed_form"] for row in rows)
    assert any(row["difference"] != row["printed"] for row in rows)
    assert {row["m"] % 2 for row in rows} == {1}


@pytest.mark.parametrize("n, m", [(5, 1), (7, 3), (12, 6), (20, 11)])
def test_binomial_identities(n, m):
    assert hockey_stick_holds(n, m)
    assert index_shift_holds(n, m)
