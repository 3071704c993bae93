"""analytics.py - Closed-form expectations of the random knapsack model
Author: Dana Whitlock
Date: 2025-06-06

Notation: delta is the capacity, mu = delta + 1 the item count,
a = 1 + 1/delta and b = 1 - 1/delta. S is the split position, K the slack.

For delta <= EXACT_MAX_DELTA every distribution and conditional expectation
is returned as a ``Fraction``; above it floats are used, with probabilities
evaluated in log space so C(delta + 1, s) / delta^s never overflows.
Approximations built from real-valued expectations are always floats.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Optional, Union

import numpy as np
from numpy.typing import NDArray

from knapsack_dnc.combinatorics import binom, log_binom
from knapsack_dnc.common.config import EXACT_MAX_DELTA, FORMULA_VARIANT
from knapsack_dnc.common.data_types import FormulaVariant, Side

Real = Union[Fraction, float]

DEFAULT_VARIANT = FormulaVariant(FORMULA_VARIANT)


class OutOfRange(Exception):
    """Exception raised for (k, s) outside the support of the model."""

    def __init__(self, delta: int, k: Optional[int], s: int):
        self.delta = delta
        self.k = k
        self.s = s
        super().__init__(f"(k={k}, s={s}) is outside the support for delta={delta}")


class OddItemCount(Exception):
    """Exception raised when the left/right analysis gets an odd item count."""

    def __init__(self, delta: int):
        self.delta = delta
        super().__init__(
            f"delta={delta} gives mu={delta + 1} items; the pair analysis needs an "
            "even item count (odd delta)"
        )


def _use_exact(delta: int, exact: Optional[bool]) -> bool:
    return delta <= EXACT_MAX_DELTA if exact is None else exact


def _number(value: int | Fraction, exact: bool) -> Real:
    return Fraction(value) if exact else float(value)


def _check_delta(delta: int) -> None:
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")


# Split / slack laws


def joint_slack_split(
    delta: int, k: int, s: int, exact: Optional[bool] = None, strict: bool = False
) -> Real:
    """P(K = k, S = s) = (delta - k) / delta^s * C(delta - k - 1, s - 2)."""
    _check_delta(delta)
    use_exact = _use_exact(delta, exact)
    if not (2 <= s <= delta + 1 and 0 <= k <= delta - s + 1):
        if strict:
            raise OutOfRange(delta, k, s)
        return _number(0, use_exact)
    if use_exact:
        return Fraction(delta - k, delta**s) * binom(delta - k - 1, s - 2)
    return math.exp(
        math.log(delta - k) - s * math.log(delta) + log_binom(delta - k - 1, s - 2)
    )


def joint_table(delta: int) -> NDArray[np.float64]:
    """Float matrix P[k, s] over k = 0..delta, s = 0..mu (zero off support)."""
    _check_delta(delta)
    mu = delta + 1
    k_grid, s_grid = np.meshgrid(np.arange(delta + 1), np.arange(mu + 1), indexing="ij")
    support = (s_grid >= 2) & (k_grid <= delta - s_grid + 1)
    k = k_grid[support].astype(np.float64)
    s = s_grid[support].astype(np.float64)
    table = np.zeros((delta + 1, mu + 1))
    table[support] = np.exp(
        np.log(delta - k) - s * math.log(delta) + log_binom(delta - k - 1, s - 2)
    )
    return table


def split_distribution(delta: int, exact: Optional[bool] = None) -> dict[int, Real]:
    """P(S = s) = (s - 1) / delta^s * C(delta + 1, s), s = 2..mu."""
    _check_delta(delta)
    splits = range(2, delta + 2)
    if _use_exact(delta, exact):
        return {s: Fraction((s - 1) * binom(delta + 1, s), delta**s) for s in splits}
    s = np.arange(2, delta + 2, dtype=np.float64)
    probabilities = np.exp(
        np.log(s - 1) - s * math.log(delta) + log_binom(delta + 1, s)
    )
    return dict(zip(splits, probabilities.tolist()))


def split_mean(delta: int, exact: Optional[bool] = None) -> Real:
    """E S = a^delta."""
    _check_delta(delta)
    if _use_exact(delta, exact):
        return Fraction(delta + 1, delta) ** delta
    return math.exp(delta * math.log1p(1.0 / delta))


def split_var(delta: int, exact: Optional[bool] = None) -> Real:
    """Var S = (3 + 1/delta) a^(delta-1) - a^(2 delta)."""
    _check_delta(delta)
    if _use_exact(delta, exact):
        a = Fraction(delta + 1, delta)
        return (3 + Fraction(1, delta)) * a ** (delta - 1) - a ** (2 * delta)
    log_a = math.log1p(1.0 / delta)
    return (3 + 1.0 / delta) * math.exp((delta - 1) * log_a) - math.exp(
        2 * delta * log_a
    )


def slack_distribution(delta: int, exact: Optional[bool] = None) -> dict[int, Real]:
    """P(K = k) = (delta - k) / delta^2 * a^(delta - k - 1), k = 0..delta-1."""
    _check_delta(delta)
    slacks = range(delta)
    if _use_exact(delta, exact):
        a = Fraction(delta + 1, delta)
        return {k: Fraction(delta - k, delta**2) * a ** (delta - k - 1) for k in slacks}
    k = np.arange(delta, dtype=np.float64)
    probabilities = (delta - k) / delta**2 * np.exp(
        (delta - k - 1) * math.log1p(1.0 / delta)
    )
    return dict(zip(slacks, probabilities.tolist()))


def _slack_mean_closed(x: Real, a: Real) -> Real:
    """Three-term slack mean, valid for integer delta and real capacities."""
    return (
        -(x + 1) / x * (a**x - 1)
        + (x + 3) * (a ** (x + 1) - (2 * x + 1) / x)
        - 2 * x * (a ** (x + 2) - (5 * x**2 + 7 * x + 2) / (2 * x**2))
    )


def slack_mean(delta: int, exact: Optional[bool] = None) -> Real:
    _check_delta(delta)
    if _use_exact(delta, exact):
        return _slack_mean_closed(Fraction(delta), Fraction(delta + 1, delta))
    return _slack_mean_closed(float(delta), 1.0 + 1.0 / delta)


def _check_split(delta: int, s: int) -> None:
    if not 2 <= s <= delta + 1:
        raise OutOfRange(delta, None, s)


def slack_mean_given_split(delta: int, s: int, exact: Optional[bool] = None) -> Real:
    """E(K | S = s) = (delta + 1 - s) / (s + 1)."""
    _check_split(delta, s)
    if _use_exact(delta, exact):
        return Fraction(delta + 1 - s, s + 1)
    return (delta + 1 - s) / (s + 1)


def weight_mean_given_split(delta: int, s: int, exact: Optional[bool] = None) -> Real:
    """E(W(j) | S = s) for any packed j < s: (delta s + s - 1) / (s^2 - 1)."""
    _check_split(delta, s)
    if _use_exact(delta, exact):
        return Fraction(delta * s + s - 1, s * s - 1)
    return (delta * s + s - 1) / (s * s - 1)


# Greedy and linear relaxation profits


def greedy_mean_given_split(delta: int, s: int, exact: Optional[bool] = None) -> Real:
    """E(Z^gr | S = s) = (2 delta - s + 4)/4 * (delta s + s - 1)/(s + 1)."""
    _check_split(delta, s)
    if _use_exact(delta, exact):
        return Fraction(2 * delta - s + 4, 4) * Fraction(delta * s + s - 1, s + 1)
    return (2 * delta - s + 4) / 4 * (delta * s + s - 1) / (s + 1)


def _shared_braces(x: Real, a: Real) -> tuple[Real, Real, Real]:
    return (
        a**x - 1,
        a ** (x + 1) - (2 * x + 1) / x,
        a ** (x + 2) - (5 * x**2 + 7 * x + 2) / (2 * x**2),
    )


def greedy_mean(delta: int, exact: Optional[bool] = None) -> Real:
    """Unconditional E Z^gr in closed form."""
    _check_delta(delta)
    use_exact = _use_exact(delta, exact)
    x: Real = Fraction(delta) if use_exact else float(delta)
    a = 1 + 1 / x
    first, second, third = _shared_braces(x, a)
    return (
        -((x + 1) ** 2) / (4 * x) * a ** (x - 1)
        + (2 * x + 3) * (x + 2) * (x + 1) / (4 * x) * first
        - (x + 2) ** 2 * second
        + (2 * x + 5) / 2 * x * third
    )


def lp_mean(delta: int, exact: Optional[bool] = None) -> Real:
    """Unconditional E Z^lp = E Z^gr + E(K G(S)) in closed form."""
    _check_delta(delta)
    use_exact = _use_exact(delta, exact)
    x: Real = Fraction(delta) if use_exact else float(delta)
    a = 1 + 1 / x
    first, second, third = _shared_braces(x, a)
    return (
        -(x + 1) * (x - 1) / (4 * x) * a ** (x - 1)
        + (2 * x - 1) * (x + 2) * (x + 1) / (4 * x) * first
        - (x + 2) * (x - 1) / 2 * second
        - x / 2 * third
    )


def greedy_mean_sum(delta: int, exact: Optional[bool] = None) -> Real:
    """E Z^gr by the law of total expectation over S."""
    distribution = split_distribution(delta, exact)
    return sum(
        (greedy_mean_given_split(delta, s, exact) * p for s, p in distribution.items()),
        _number(0, _use_exact(delta, exact)),
    )


def lp_gain_sum(delta: int, exact: Optional[bool] = None) -> Real:
    """E Y^lp = sum_s E(K | S = s) (mu - s + 1)/2 P(S = s)."""
    mu = delta + 1
    distribution = split_distribution(delta, exact)
    half = Fraction(1, 2) if _use_exact(delta, exact) else 0.5
    return sum(
        (
            slack_mean_given_split(delta, s, exact) * (mu - s + 1) * half * p
            for s, p in distribution.items()
        ),
        _number(0, _use_exact(delta, exact)),
    )


def lp_mean_sum(delta: int, exact: Optional[bool] = None) -> Real:
    return greedy_mean_sum(delta, exact) + lp_gain_sum(delta, exact)


# Eligible-first gain


def _gain_terms(k, c, lead, count, step, variant: FormulaVariant):
    """sum_{j < count} (lead - step j)/2 * (k/2) * q r^j with q = k/c, r = 1 - q.

    Pure arithmetic so it serves Fractions, floats and numpy arrays alike.
    """
    q = k / c
    r = 1 - q
    first = k / 4 * lead * (1 - r**count)
    second = step * c / 4 * r * (1 - (1 + (count - 1) * q) * r ** (count - 1))
    if variant is FormulaVariant.PRINTED:
        second = second / k
    gain = first - second
    if variant is FormulaVariant.EXACT:
        # first eligible weight is uniform on 1..k, not on (0, k]
        gain = gain * (k + 1) / k
    return gain


def _eligible_gain(k, c, lead, count, step, variant: FormulaVariant) -> Real:
    if k <= 0 or count <= 0:
        return 0.0 if isinstance(k, float) else Fraction(0)
    return _gain_terms(k, c, lead, count, step, variant)


def ef_conditional(
    delta: int,
    k: int,
    s: int,
    variant: FormulaVariant = DEFAULT_VARIANT,
    exact: Optional[bool] = None,
) -> Real:
    """E(Y^ef | K = k, S = s), the eligible-first gain over the greedy prefix."""
    _check_split(delta, s)
    if k <= 0:
        return _number(0, _use_exact(delta, exact))
    n_after = delta - s + 1
    if _use_exact(delta, exact):
        return _eligible_gain(
            Fraction(k), Fraction(delta), n_after, n_after, 1, variant
        )
    return _eligible_gain(float(k), float(delta), n_after, n_after, 1, variant)


def ef_conditional_sum(delta: int, k: int, s: int) -> Fraction:
    """Term-by-term sum over the items after the split (continuous weight model)."""
    _check_split(delta, s)
    mu = delta + 1
    q = Fraction(k, delta)
    return sum(
        (
            Fraction(mu - i + 1, 2) * Fraction(k, 2) * q * (1 - q) ** (i - s - 1)
            for i in range(s + 1, mu + 1)
        ),
        Fraction(0),
    )


def ef_gain_exact(
    delta: int, variant: FormulaVariant = DEFAULT_VARIANT, exact: Optional[bool] = None
) -> Real:
    """E Y^ef as the double sum over the joint law, k from 1."""
    _check_delta(delta)
    mu = delta + 1
    if _use_exact(delta, exact):
        total = Fraction(0)
        for s in range(2, mu + 1):
            for k in range(1, delta - s + 2):
                total += ef_conditional(delta, k, s, variant, True) * joint_slack_split(
                    delta, k, s, True
                )
        return total
    table = joint_table(delta)
    k_grid, s_grid = np.meshgrid(np.arange(delta + 1), np.arange(mu + 1), indexing="ij")
    support = (s_grid >= 2) & (k_grid >= 1) & (k_grid <= delta - s_grid + 1)
    k = k_grid[support].astype(np.float64)
    n_after = (delta - s_grid[support] + 1).astype(np.float64)
    gains = _gain_terms(k, float(delta), n_after, n_after, 1, variant)
    return float(np.dot(gains, table[support]))


def ef_mean_exact(
    delta: int, variant: FormulaVariant = DEFAULT_VARIANT, exact: Optional[bool] = None
) -> Real:
    return greedy_mean(delta, exact) + ef_gain_exact(delta, variant, exact)


def ef_mean_approx(delta: int, variant: FormulaVariant = DEFAULT_VARIANT) -> float:
    """E Z^gr plus the conditional gain evaluated at (E K, E S)."""
    e_slack = float(slack_mean(delta, exact=False))
    n_after = delta - float(split_mean(delta, exact=False)) + 1
    gain = _eligible_gain(e_slack, float(delta), n_after, n_after, 1, variant)
    return float(greedy_mean(delta, exact=False)) + float(gain)


def ef_approx_deviation(
    delta: int, variant: FormulaVariant = DEFAULT_VARIANT
) -> float:
    """100 * |approx - exact| / exact."""
    exact_value = float(ef_mean_exact(delta, variant, exact=False))
    return 100 * abs(ef_mean_approx(delta, variant) - exact_value) / exact_value


# Asymptotics

LIMITS: dict[str, float] = {
    "split_mean": math.e,
    "split_var": 3 * math.e - math.e**2,
    "relative_slack": 3 - math.e,
    "lp_approx_ratio": 1.0,
    "greedy_lp_ratio": math.e - 2,
    "gain_lp_ratio": 3 - math.e,
}


@dataclass(frozen=True)
class AsymptoticRecord:
    delta: int
    split_mean: float
    split_var: float
    relative_slack: float
    lp_approx_ratio: float
    greedy_lp_ratio: float
    gain_lp_ratio: float

    def gaps(self) -> dict[str, float]:
        """Distance of each ratio from its limit."""
        return {name: abs(getattr(self, name) - limit) for name, limit in LIMITS.items()}


def asymptotics(delta: int) -> AsymptoticRecord:
    e_split = float(split_mean(delta, exact=False))
    e_slack = float(slack_mean(delta, exact=False))
    e_greedy = float(greedy_mean(delta, exact=False))
    e_lp = float(lp_mean(delta, exact=False))
    gain = (delta - e_split + 1) / 2 * e_slack
    return AsymptoticRecord(
        delta=delta,
        split_mean=e_split,
        split_var=float(split_var(delta, exact=False)),
        relative_slack=e_slack / delta,
        lp_approx_ratio=(e_greedy + gain) / e_lp,
        greedy_lp_ratio=e_greedy / e_lp,
        gain_lp_ratio=gain / e_lp,
    )


# Left/right pair analysis


def _check_pair(delta: int) -> None:
    _check_delta(delta)
    if delta % 2 == 0:
        raise OddItemCount(delta)


def ceil_floor_half_slack(delta: int, exact: Optional[bool] = None) -> tuple[Real, Real]:
    """(E ceil(K/2), E floor(K/2)) = E K / 2 +- P(K odd) / 2."""
    use_exact = _use_exact(delta, exact)
    distribution = slack_distribution(delta, use_exact)
    odd = sum(
        (p for k, p in distribution.items() if k % 2 == 1), _number(0, use_exact)
    )
    half_slack = slack_mean(delta, use_exact) / 2
    return half_slack + odd / 2, half_slack - odd / 2


def capacities_given(
    delta: int,
    k: int,
    s: int,
    variant: FormulaVariant = DEFAULT_VARIANT,
) -> tuple[Fraction, Fraction]:
    """E(C_lt | K = k, S = s) and E(C_rt | K = k, S = s), exactly.

    The s - 1 packed weights form a uniform composition of delta - k; with an
    odd number of parts the odd positions carry (delta - k)/(s - 1) more
    than the even ones on average.
    """
    _check_split(delta, s)
    base = Fraction(delta - k, 2)
    tail = Fraction(0)
    if s % 2 == 0:
        tail = Fraction(delta - k, 2 * (s - 1))
        if variant is FormulaVariant.PRINTED:
            tail /= 2
    return base + tail + math.ceil(k / 2), base - tail + k // 2


def capacities_mean(
    delta: int,
    variant: FormulaVariant = DEFAULT_VARIANT,
    exact: Optional[bool] = None,
) -> tuple[Real, Real]:
    """(E C_lt, E C_rt); they always sum to delta."""
    _check_pair(delta)
    use_exact = _use_exact(delta, exact)
    x: Real = Fraction(delta) if use_exact else float(delta)
    mu = x + 1
    a = 1 + 1 / x
    b = 1 - 1 / x
    ceil_half, floor_half = ceil_floor_half_slack(delta, use_exact)
    odd_half = (ceil_half - floor_half) / 2
    if variant is FormulaVariant.PRINTED:
        tail = mu / 8 * (a**mu + b**mu) - x / 8 * (a ** (mu + 1) - b ** (mu + 1))
    else:
        tail = (
            mu / 4 * (a**mu + b**mu)
            - x / 4 * (a ** (mu + 1) - b ** (mu + 1))
            + _number(1, use_exact) / 2
        )
    left = x / 2 + odd_half + tail
    return left, x - left


def capacities_mean_sum(
    delta: int, variant: FormulaVariant = DEFAULT_VARIANT
) -> tuple[Fraction, Fraction]:
    """Exact (E C_lt, E C_rt) summed over the joint law; small delta only."""
    _check_pair(delta)
    left = Fraction(0)
    right = Fraction(0)
    for s in range(2, delta + 2):
        for k in range(0, delta - s + 2):
            p = joint_slack_split(delta, k, s, exact=True)
            c_left, c_right = capacities_given(delta, k, s, variant)
            left += c_left * p
            right += c_right * p
    return left, right


def side_split_slack_approx(c: float) -> tuple[float, float]:
    """(E S_side, E K_side) at a real-valued side capacity c."""
    if c <= 0:
        raise ValueError(f"Side capacity must be positive, got {c}")
    a = 1.0 + 1.0 / c
    return a**c, float(_slack_mean_closed(float(c), a))


def _side_lead(mu: float, s: float, side: Side) -> float:
    return mu - 2 * s if side is Side.LEFT else mu - 2 * s - 1


def side_greedy_mean(c: float, mu: float, side: Side) -> float:
    """E Z^gr of a side problem with capacity c in an instance of mu items."""
    if c <= 0:
        raise ValueError(f"Side capacity must be positive, got {c}")
    a = 1.0 + 1.0 / c
    shift = 3 if side is Side.LEFT else 2
    constant = (
        (2 * mu * c + 6 * c + 3 * mu + 10) / 2
        if side is Side.LEFT
        else (2 * mu * c + 4 * c + 3 * mu + 7) / 2
    )
    return (
        -(c / 2) * a ** (c + 1)
        - (mu + shift) * (c + 2) / 2 * (a ** (c + 1) - (c + 1) / c)
        + constant
        + c
        * (mu + shift)
        * (a ** (c + 2) - 1 - (c + 2) / c - (c + 1) * (c + 2) / (2 * c**2))
    )


def side_ef_gain(
    c: float, mu: float, side: Side, variant: FormulaVariant = DEFAULT_VARIANT
) -> float:
    """Side eligible-first gain at (E K_side, E S_side)."""
    e_split, e_slack = side_split_slack_approx(c)
    count = mu / 2 - e_split
    lead = _side_lead(mu, e_split, side)
    return float(_eligible_gain(e_slack, float(c), lead, count, 2, variant))


def side_ef_mean(
    c: float, mu: float, side: Side, variant: FormulaVariant = DEFAULT_VARIANT
) -> float:
    return side_greedy_mean(c, mu, side) + side_ef_gain(c, mu, side, variant)


def side_lp_mean(c: float, mu: float, side: Side) -> float:
    """E Z^lp of a side problem: greedy plus slack times the split item's mean efficiency."""
    e_split, e_slack = side_split_slack_approx(c)
    offset = 2 if side is Side.LEFT else 1
    return side_greedy_mean(c, mu, side) + e_slack * (mu - 2 * e_split + offset) / 2


# Report


@dataclass
class ExpectationReport:
    """Every closed-form quantity at one delta; pair fields need odd delta."""

    delta: int
    variant: FormulaVariant
    p_split: dict[int, float] = field(default_factory=dict)
    e_split: float = 0.0
    var_split: float = 0.0
    p_slack: dict[int, float] = field(default_factory=dict)
    e_slack: float = 0.0
    joint: dict[str, float] = field(default_factory=dict)
    e_weight_given_split: dict[int, float] = field(default_factory=dict)
    e_greedy_given_split: dict[int, float] = field(default_factory=dict)
    e_greedy: float = 0.0
    e_lp: float = 0.0
    e_ef_exact: float = 0.0
    ef_approx: float = 0.0
    e_cap_left: Optional[float] = None
    e_cap_right: Optional[float] = None
    e_ceil_half_slack: float = 0.0
    e_floor_half_slack: float = 0.0
    e_split_left: Optional[float] = None
    e_split_right: Optional[float] = None
    e_slack_left: Optional[float] = None
    e_slack_right: Optional[float] = None
    e_greedy_left: Optional[float] = None
    e_greedy_right: Optional[float] = None
    ef_left: Optional[float] = None
    ef_right: Optional[float] = None

    SCALAR_FIELDS: ClassVar[tuple[str, ...]] = (
        "e_split",
        "var_split",
        "e_slack",
        "e_greedy",
        "e_lp",
        "e_ef_exact",
        "ef_approx",
        "e_cap_left",
        "e_cap_right",
        "e_ceil_half_slack",
        "e_floor_half_slack",
        "e_split_left",
        "e_split_right",
        "e_slack_left",
        "e_slack_right",
        "e_greedy_left",
        "e_greedy_right",
        "ef_left",
        "ef_right",
    )
    DISTRIBUTION_FIELDS: ClassVar[tuple[str, ...]] = (
        "p_split",
        "p_slack",
        "joint",
        "e_weight_given_split",
        "e_greedy_given_split",
    )

    def check(self, tolerance: float = 1e-9) -> None:
        """Normalisation and capacity-partition invariants."""
        if abs(sum(self.p_split.values()) - 1) > tolerance:
            raise ValueError(f"P(S) does not normalise at delta={self.delta}")
        if abs(sum(self.p_slack.values()) - 1) > tolerance:
            raise ValueError(f"P(K) does not normalise at delta={self.delta}")
        if self.e_cap_left is not None and self.e_cap_right is not None:
            if abs(self.e_cap_left + self.e_cap_right - self.delta) > tolerance:
                raise ValueError(f"Capacities do not partition delta={self.delta}")


def expectation_report(
    delta: int,
    variant: FormulaVariant = DEFAULT_VARIANT,
    include_joint: bool = True,
) -> ExpectationReport:
    """Evaluate every closed form at delta."""
    _check_delta(delta)
    splits = range(2, delta + 2)
    report = ExpectationReport(delta=delta, variant=variant)
    report.p_split = {s: float(p) for s, p in split_distribution(delta).items()}
    report.e_split = float(split_mean(delta))
    report.var_split = float(split_var(delta))
    report.p_slack = {k: float(p) for k, p in slack_distribution(delta).items()}
    report.e_slack = float(slack_mean(delta))
    if include_joint:
        report.joint = {
            f"{k},{s}": float(joint_slack_split(delta, k, s))
            for s in splits
            for k in range(delta - s + 2)
        }
    report.e_weight_given_split = {
        s: float(weight_mean_given_split(delta, s)) for s in splits
    }
    report.e_greedy_given_split = {
        s: float(greedy_mean_given_split(delta, s)) for s in splits
    }
    report.e_greedy = float(greedy_mean(delta))
    report.e_lp = float(lp_mean(delta))
    report.e_ef_exact = float(ef_mean_exact(delta, variant))
    report.ef_approx = ef_mean_approx(delta, variant)
    ceil_half, floor_half = ceil_floor_half_slack(delta)
    report.e_ceil_half_slack = float(ceil_half)
    report.e_floor_half_slack = float(floor_half)
    if delta % 2 == 1:
        mu = float(delta + 1)
        left, right = (float(c) for c in capacities_mean(delta, variant))
        report.e_cap_left, report.e_cap_right = left, right
        if left > 0:
            report.e_split_left, report.e_slack_left = side_split_slack_approx(left)
            report.e_greedy_left = side_greedy_mean(left, mu, Side.LEFT)
            report.ef_left = side_ef_mean(left, mu, Side.LEFT, variant)
        if right > 0:
            report.e_split_right, report.e_slack_right = side_split_slack_approx(right)
            report.e_greedy_right = side_greedy_mean(right, mu, Side.RIGHT)
            report.ef_right = side_ef_mean(right, mu, Side.RIGHT, variant)
    report.check()
    return report
