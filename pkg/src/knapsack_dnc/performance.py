"""performance.py - Expected efficiency of D&C pairs and tree estimates
Author: Dana Whitlock
Date: 2025-06-07

All values are percentages. A pair parameter compares the expected
objective of the left and right halves with the whole problem; a tree
estimate multiplies side factors along each leaf's path and sums the leaves,
never reporting less than the 50% worst-case guarantee.
"""

import math
from dataclasses import asdict, dataclass
from typing import Sequence, Union

from knapsack_dnc.analytics import (
    DEFAULT_VARIANT,
    OddItemCount,
    capacities_mean,
    ef_mean_approx,
    lp_mean,
    side_ef_mean,
    side_greedy_mean,
    side_lp_mean,
)
from knapsack_dnc.common.data_types import FormulaVariant, Side
from knapsack_dnc.common.logger import logger
from knapsack_dnc.dnc import DncTree, leaf_markers

PARAMETERS = ("rho_ef", "rho_lp", "lb_gr", "lb_ef")
WORST_CASE_FLOOR = 50.0

Marker = tuple[Side, ...]
TreeShape = Union[int, DncTree, Sequence[Marker]]


@dataclass(frozen=True)
class PerformanceParams:
    rho_ef: float
    rho_ef_lt: float
    rho_ef_rt: float
    rho_lp: float
    rho_lp_lt: float
    rho_lp_rt: float
    lb_gr: float
    lb_gr_lt: float
    lb_gr_rt: float
    lb_ef: float
    lb_ef_lt: float
    lb_ef_rt: float

    @classmethod
    def from_sides(cls, sides: dict[str, tuple[float, float]]) -> "PerformanceParams":
        """Build from {parameter: (left, right)}; totals are the side sums."""
        values: dict[str, float] = {}
        for name in PARAMETERS:
            left, right = sides[name]
            values[name] = left + right
            values[f"{name}_lt"] = left
            values[f"{name}_rt"] = right
        return cls(**values)

    def side(self, name: str, side: Side) -> float:
        suffix = "lt" if side is Side.LEFT else "rt"
        return getattr(self, f"{name}_{suffix}")

    def violations(self) -> list[str]:
        """Broken orderings; lb^gr <= lb^ef must hold."""
        issues = []
        if self.lb_gr > self.lb_ef:
            issues.append(f"lb_gr {self.lb_gr:.4f} > lb_ef {self.lb_ef:.4f}")
        return issues

    def to_record(self) -> dict[str, float]:
        return asdict(self)


# Per-side means (left, right) used for the tree estimates
REFERENCE_SIDE_MEANS = PerformanceParams.from_sides(
    {
        "rho_ef": (68.39, 31.54),
        "rho_lp": (64.64, 27.95),
        "lb_gr": (49.23, 22.75),
        "lb_ef": (55.65, 24.07),
    }
)


def performance_params(
    delta: int, variant: FormulaVariant = DEFAULT_VARIANT
) -> PerformanceParams:
    """Pair efficiencies and lower bounds at an odd capacity delta."""
    if delta % 2 == 0:
        raise OddItemCount(delta)
    mu = float(delta + 1)
    left_capacity, right_capacity = (float(c) for c in capacities_mean(delta, variant))
    ef_total = ef_mean_approx(delta, variant)
    lp_total = float(lp_mean(delta, exact=False))

    greedy_sides = (
        side_greedy_mean(left_capacity, mu, Side.LEFT),
        side_greedy_mean(right_capacity, mu, Side.RIGHT),
    )
    ef_sides = (
        side_ef_mean(left_capacity, mu, Side.LEFT, variant),
        side_ef_mean(right_capacity, mu, Side.RIGHT, variant),
    )
    lp_sides = (
        side_lp_mean(left_capacity, mu, Side.LEFT),
        side_lp_mean(right_capacity, mu, Side.RIGHT),
    )

    def percent(values: tuple[float, float], whole: float) -> tuple[float, float]:
        return 100 * values[0] / whole, 100 * values[1] / whole

    params = PerformanceParams.from_sides(
        {
            "rho_ef": percent(ef_sides, ef_total),
            "rho_lp": percent(lp_sides, lp_total),
            "lb_gr": percent(greedy_sides, lp_total),
            "lb_ef": percent(ef_sides, lp_total),
        }
    )
    for issue in params.violations():
        logger.warning(f"delta={delta}: {issue}")
    return params


def full_tree_markers(height: int) -> list[Marker]:
    """Leaf markers of the complete tree of a height, left to right."""
    markers: list[Marker] = [()]
    for _ in range(height):
        markers = [m + (side,) for m in markers for side in (Side.LEFT, Side.RIGHT)]
    return markers


def example_tree_markers() -> list[Marker]:
    """Height-2 tree that splits only the left child: leaves ll, lr and r."""
    return [(Side.LEFT, Side.LEFT), (Side.LEFT, Side.RIGHT), (Side.RIGHT,)]


def parse_marker(text: str) -> Marker:
    """'llr' -> (LEFT, LEFT, RIGHT); empty or 'root' is the root."""
    if text in ("", "root"):
        return ()
    return tuple(Side(ch) for ch in text)


@dataclass
class TreePerformance:
    leaves: dict[str, dict[str, float]]
    totals: dict[str, float]


def _markers_of(shape: TreeShape) -> list[Marker]:
    if isinstance(shape, int):
        return full_tree_markers(shape)
    if isinstance(shape, DncTree):
        return leaf_markers(shape)
    return [tuple(marker) for marker in shape]


def vertex_factor(marker: Marker, params: PerformanceParams, name: str) -> float:
    """100 * product of side factors / 100 along the path."""
    return 100 * math.prod(params.side(name, side) / 100 for side in marker)


def tree_performance(shape: TreeShape, params: PerformanceParams) -> TreePerformance:
    """Leaf factors and clamped totals for every parameter."""
    markers = _markers_of(shape)
    leaves = {
        "".join(side.value for side in marker) or "root": {
            name: vertex_factor(marker, params, name) for name in PARAMETERS
        }
        for marker in markers
    }
    totals = {
        name: max(WORST_CASE_FLOOR, math.fsum(leaf[name] for leaf in leaves.values()))
        for name in PARAMETERS
    }
    return TreePerformance(leaves, totals)
