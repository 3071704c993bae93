"""dynamic_program.py - Exact 0-1 solver by dynamic programming over capacity
Author: Dana Whitlock
Date: 2025-06-03
"""

import math

import numpy as np

from knapsack_dnc.common.config import DP_MAX_CELLS
from knapsack_dnc.common.data_types import AlgorithmTag, Solution, Subproblem
from knapsack_dnc.common.logger import logger
from knapsack_dnc.solvers.base_solver import BaseSolver


class CapacityOverflow(Exception):
    """Exception raised when a DP table would exceed the configured size."""

    def __init__(self, items: int, capacity: int, limit: int = DP_MAX_CELLS):
        self.items = items
        self.capacity = capacity
        self.limit = limit
        super().__init__(
            f"DP table of {items} x {capacity + 1} cells exceeds the limit of {limit}"
        )


class DynamicProgramSolver(BaseSolver):
    """Exact optimum in O(|V| * capacity) time.

    Profits stay real valued and are compared exactly. Among optimal
    selections the lexicographically smallest index set is returned: the
    table holds suffix optima, filled from the last item backwards, and the
    traceback walks forward taking every item an optimal completion allows.
    """

    tag = AlgorithmTag.DYNAMIC_PROGRAM

    def __init__(self, name: str | None = None, max_cells: int = DP_MAX_CELLS):
        self.max_cells = max_cells
        super().__init__(name)

    def _solve(self, subproblem: Subproblem) -> Solution:
        capacity = subproblem.capacity
        weights = subproblem.weights
        profits = subproblem.profits
        count = len(subproblem)
        if count * (capacity + 1) > self.max_cells:
            raise CapacityOverflow(count, capacity, self.max_cells)

        # best[r]: optimum over the items after the current one with capacity r
        best = np.zeros(capacity + 1, dtype=np.float64)
        takeable = np.zeros((count, capacity + 1), dtype=bool)
        for item in range(count - 1, -1, -1):
            weight, profit = weights[item], profits[item]
            if weight > capacity:
                continue
            candidate = best[: capacity + 1 - weight] + profit
            takes = candidate >= best[weight:]
            best[weight:] = np.where(takes, candidate, best[weight:])
            takeable[item, weight:] = takes

        decisions = [0] * count
        residual = capacity
        for item in range(count):
            if takeable[item, residual]:
                decisions[item] = 1
                residual -= weights[item]

        objective = math.fsum(p for p, x in zip(profits, decisions) if x == 1)
        if not math.isclose(objective, float(best[capacity]), rel_tol=1e-9, abs_tol=1e-12):
            logger.warning(
                f"DP recovery mismatch: table {best[capacity]} vs selection {objective}"
            )
        return Solution(
            self.tag, objective, tuple(decisions), None, None, subproblem.indices
        )
