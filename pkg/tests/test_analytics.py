import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from knapsack_dnc.analytics import (
    LIMITS,
    OddItemCount,
    OutOfRange,
    asymptotics,
    capacities_given,
    capacities_mean,
    capacities_mean_sum,
    ceil_floor_half_slack,
    ef_approx_deviation,
    ef_conditional,
    ef_conditional_sum,
    ef_mean_approx,
    ef_mean_exact,
    expectation_report,
    greedy_mean,
    greedy_mean_given_split,
    greedy_mean_sum,
    joint_slack_split,
    joint_table,
    lp_mean,
    lp_mean_sum,
    side_split_slack_approx,
    slack_distribution,
    slack_mean,
    split_distribution,
    split_mean,
    split_var,
)
from knapsack_dnc.common.data_types import FormulaVariant


def expected_profits(delta: int) -> dict[str, Fraction]:
    """E Z^gr, E Z^ef and E Z^lp by enumerating weights.

    The item in 1-based position i has expected efficiency (mu - i + 1) / 2
    independently of the weights, so each objective is linear in the packed weights.
    """
    mu = delta + 1
    totals = {"gr": Fraction(0), "ef": Fraction(0), "lp": Fraction(0)}
    for weights in product(range(1, delta + 1), repeat=mu):
        packed = 0
        used = 0
        while packed < mu and used + weights[packed] <= delta:
            used += weights[packed]
            packed += 1
        slack = delta - used
        greedy_value = sum(Fraction((mu - i) * weights[i], 2) for i in range(packed))
        totals["gr"] += greedy_value
        totals["lp"] += greedy_value + Fraction(slack * (mu - packed), 2)
        eligible = next((i for i in range(packed + 1, mu) if weights[i] <= slack), None)
        gain = 0 if eligible is None else Fraction((mu - eligible) * weights[eligible], 2)
        totals["ef"] += greedy_value + gain
    count = delta**mu
    return {name: total / count for name, total in totals.items()}


@pytest.mark.parametrize("delta", [1, 2, 5, 12])
def test_distributions_normalise_exactly(delta):
    assert sum(split_distribution(delta, exact=True).values()) == 1
    assert sum(slack_distribution(delta, exact=True).values()) == 1
    joint = sum(
        joint_slack_split(delta, k, s, exact=True)
        for s in range(2, delta + 2)
        for k in range(delta + 1)
    )
    assert joint == 1


@pytest.mark.parametrize("delta", [50, 300, 1023])
def test_float_distributions_normalise(delta):
    assert math.fsum(split_distribution(delta).values()) == pytest.approx(1.0)
    assert math.fsum(slack_distribution(delta).values()) == pytest.approx(1.0)
    assert np.sum(joint_table(delta)) == pytest.approx(1.0)


def test_exact_and_float_agree():
    for delta in (7, 11):
        assert split_mean(delta, exact=False) == pytest.approx(
            float(split_mean(delta, exact=True))
        )
        assert greedy_mean(delta, exact=False) == pytest.approx(
            float(greedy_mean(delta, exact=True))
        )
        assert lp_mean(delta, exact=False) == pytest.approx(
            float(lp_mean(delta, exact=True))
        )


def test_exactness_switch():
    assert isinstance(split_mean(12), Fraction)
    assert isinstance(split_mean(13), float)


@pytest.mark.parametrize("delta", range(1, 9))
def test_split_moments(delta):
    distribution = split_distribution(delta, exact=True)
    mean = sum(s * p for s, p in distribution.items())
    second = sum(s * s * p for s, p in distribution.items())
    assert split_mean(delta) == mean
    assert split_var(delta) == second - mean**2
    slack = slack_distribution(delta, exact=True)
    assert slack_mean(delta) == sum(k * p for k, p in slack.items())


@pytest.mark.parametrize("delta", range(1, 11))
def test_greedy_and_lp_closed_forms(delta):
    assert greedy_mean(delta) == greedy_mean_sum(delta)
    assert lp_mean(delta) == lp_mean_sum(delta)


@pytest.mark.parametrize("delta", [1, 2, 3, 4])
def test_profit_means_by_enumeration(delta):
    expected = expected_profits(delta)
    assert greedy_mean(delta) == expected["gr"]
    assert lp_mean(delta) == expected["lp"]
    assert ef_mean_exact(delta, FormulaVariant.EXACT) == expected["ef"]


def test_greedy_given_split():
    assert greedy_mean_given_split(2, 2) == Fraction(5, 2)
    assert greedy_mean_given_split(2, 3) == Fraction(5, 2)
    with pytest.raises(OutOfRange):
        greedy_mean_given_split(5, 7)
    with pytest.raises(OutOfRange):
        joint_slack_split(5, 4, 3, strict=True)
    assert joint_slack_split(5, 4, 3) == 0


def test_ef_conditional_matches_term_sum():
    for k, s in [(1, 2), (3, 3), (5, 4)]:
        closed = ef_conditional(9, k, s, FormulaVariant.CORRECTED, exact=True)
        assert closed == ef_conditional_sum(9, k, s)
    assert ef_conditional(9, 0, 3) == 0


def test_ef_variants_differ():
    corrected = ef_mean_exact(9, FormulaVariant.CORRECTED)
    exact = ef_mean_exact(9, FormulaVariant.EXACT)
    printed = ef_mean_exact(9, FormulaVariant.PRINTED)
    assert corrected < exact
    assert printed != corrected
    assert greedy_mean(9) < corrected < lp_mean(9)


def test_ef_approximation_improves_with_delta():
    deviations = [ef_approx_deviation(delta) for delta in (10, 40, 120)]
    assert deviations[0] > deviations[2]
    assert ef_mean_approx(120) == pytest.approx(
        ef_mean_exact(120, exact=False), rel=0.02
    )


def test_limits_at_large_delta():
    record = asymptotics(10_000)
    assert record.split_mean == pytest.approx(math.e, abs=1e-3)
    for name, gap in record.gaps().items():
        assert gap < 1e-2, name
    assert LIMITS["greedy_lp_ratio"] + LIMITS["gain_lp_ratio"] == pytest.approx(1.0)


def test_capacities_small():
    assert capacities_mean(1) == (1, 0)
    assert capacities_mean(3) == (Fraction(22, 9), Fraction(5, 9))
    left, right = capacities_mean(299)
    assert left + right == pytest.approx(299)
    assert left > right
    with pytest.raises(OddItemCount):
        capacities_mean(8)


@pytest.mark.parametrize("delta", [3, 5, 7, 9, 11])
def test_capacity_closed_form_matches_sum(delta):
    assert capacities_mean(delta) == capacities_mean_sum(delta)


def test_printed_capacity_variant_differs():
    printed = capacities_mean(7, FormulaVariant.PRINTED)
    assert printed != capacities_mean(7, FormulaVariant.CORRECTED)
    assert sum(printed) == 7


def test_capacities_given():
    # one packed part: it all goes left
    assert capacities_given(7, 2, 2) == (Fraction(5) + 1, Fraction(1))
    assert capacities_given(7, 0, 3) == (Fraction(7, 2), Fraction(7, 2))


def test_half_slack_split():
    ceil_half, floor_half = ceil_floor_half_slack(9)
    assert ceil_half + floor_half == slack_mean(9)
    assert ceil_half >= floor_half


def test_side_split_slack():
    e_split, e_slack = side_split_slack_approx(100.0)
    assert e_split == pytest.approx(float(split_mean(100, exact=False)))
    assert e_slack == pytest.approx(float(slack_mean(100, exact=False)))
    with pytest.raises(ValueError):
        side_split_slack_approx(0.0)


def test_expectation_report():
    report = expectation_report(63)
    assert report.e_split == pytest.approx(float(split_mean(63)))
    assert report.e_cap_left + report.e_cap_right == pytest.approx(63)
    assert report.e_greedy < report.e_ef_exact < report.e_lp
    assert report.ef_left is not None and report.ef_right is not None
    assert "2,2" not in expectation_report(63, include_joint=False).joint

    even = expectation_report(64)
    assert even.e_cap_left is None
    assert even.ef_left is None
