"""combinatorics.py - Binomials, integer compositions and their parity sums
Author: Dana Whitlock
Date: 2025-06-04

Brute-force enumeration here is the oracle the closed forms in
``analytics`` are checked against.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln

from knapsack_dnc.common.config import COMPOSITION_LIMIT
from knapsack_dnc.common.logger import logger


class SizeGuard(Exception):
    """Exception raised when an enumeration would be too large."""

    def __init__(self, n: int, m: int, count: int, limit: int = COMPOSITION_LIMIT):
        self.n = n
        self.m = m
        self.count = count
        self.limit = limit
        super().__init__(
            f"{count} compositions of {n} into {m} parts exceed the limit {limit}"
        )


@dataclass(frozen=True)
class Composition:
    """Ordered positive parts with a fixed sum."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(part < 1 for part in self.parts):
            raise ValueError(f"Composition parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def odd_sum(self) -> int:
        """Sum of the parts in odd 1-based positions."""
        return sum(self.parts[0::2])

    @property
    def even_sum(self) -> int:
        return sum(self.parts[1::2])


def binom(n: int, m: int) -> int:
    """Exact binomial coefficient; zero outside 0 <= m <= n."""
    if m < 0 or n < 0 or m > n:
        return 0
    return math.comb(n, m)


def log_binom(n: ArrayLike, m: ArrayLike) -> NDArray[np.float64] | float:
    """Natural log of C(n, m) through log-gamma; works elementwise on arrays."""
    n_arr = np.asarray(n, dtype=np.float64)
    m_arr = np.asarray(m, dtype=np.float64)
    if np.any(m_arr < 0) or np.any(m_arr > n_arr):
        raise ValueError("log_binom needs 0 <= m <= n")
    result = gammaln(n_arr + 1.0) - gammaln(m_arr + 1.0) - gammaln(n_arr - m_arr + 1.0)
    if np.ndim(result) == 0:
        return float(result)
    return result


def composition_count(n: int, m: int) -> int:
    """Number of compositions of n into m parts, C(n-1, m-1)."""
    if n < 1 or m < 1:
        return 0
    return binom(n - 1, m - 1)


def enumerate_compositions(
    n: int, m: int, limit: int = COMPOSITION_LIMIT
) -> Iterator[Composition]:
    """Yield every composition of n into m parts, lexicographically by cut points."""
    if not 1 <= m <= n:
        raise ValueError(f"Need 1 <= m <= n, got n={n}, m={m}")
    count = composition_count(n, m)
    if count > limit:
        raise SizeGuard(n, m, count, limit)
    for cuts in combinations(range(1, n), m - 1):
        bounds = (0,) + cuts + (n,)
        yield Composition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def odd_even_sums(n: int, m: int, limit: int = COMPOSITION_LIMIT) -> tuple[int, int]:
    """Totals of odd-position and even-position parts over all compositions."""
    odd_total = 0
    even_total = 0
    for composition in enumerate_compositions(n, m, limit):
        odd_total += composition.odd_sum
        even_total += composition.even_sum
    return odd_total, even_total


def odd_even_difference_sum(n: int, m: int) -> int:
    """Odd minus even totals through the first-part decomposition.

    Compositions whose first part is i leave a composition of n - i into
    m - 1 parts; for odd m that remainder has an even number of parts and
    contributes no net difference, leaving sum_i i * C(n-i-1, m-2).
    """
    if m % 2 == 0:
        return 0
    if m == 1:
        return n
    return sum(i * binom(n - i - 1, m - 2) for i in range(1, n - m + 2))


def odd_even_difference(n: int, m: int) -> int:
    """Closed form of odd minus even totals: 0 for even m, C(n, m) for odd m."""
    if m % 2 == 0:
        return 0
    return binom(n, m)


def mean_odd_even_difference(n: int, m: int) -> Fraction:
    """Per-composition mean of odd minus even sums (n/m for odd m)."""
    count = composition_count(n, m)
    if count == 0:
        return Fraction(0)
    return Fraction(odd_even_difference(n, m), count)


def printed_odd_even_difference(n: int, m: int) -> Fraction:
    """The published expression (n+1)/(2(l+1)) * C(n, 2l+1) for m = 2l+1."""
    if m % 2 == 0:
        return Fraction(0)
    half = (m - 1) // 2
    return Fraction(n + 1, 2 * (half + 1)) * binom(n, m)


def odd_even_discrepancies(max_n: int) -> list[dict[str, int | Fraction]]:
    """Brute force against the shipped and published odd-m forms, n <= max_n."""
    rows: list[dict[str, int | Fraction]] = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 1, 2):
            odd_total, even_total = odd_even_sums(n, m)
            brute = odd_total - even_total
            shipped = odd_even_difference(n, m)
            printed = printed_odd_even_difference(n, m)
            if brute != shipped:
                logger.error(f"Closed form mismatch at n={n}, m={m}: {brute} != {shipped}")
            rows.append(
                {
                    "n": n,
                    "m": m,
                    "compositions": composition_count(n, m),
                    "difference": brute,
                    "closed_form": shipped,
                    "printed": printed,
                }
            )
    return rows


def hockey_stick_holds(n: int, m: int) -> bool:
    """sum_{j=m-1}^{n-1} C(j, m-1) == C(n, m)."""
    return sum(binom(j, m - 1) for j in range(m - 1, n)) == binom(n, m)


def index_shift_holds(n: int, m: int) -> bool:
    """m * C(n, m) == n * C(n-1, m-1)."""
    return m * binom(n, m) == n * binom(n - 1, m - 1)
