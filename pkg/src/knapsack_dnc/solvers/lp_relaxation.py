"""lp_relaxation.py - Linear relaxation solver (fractional split item)
Author: Dana Whitlock
Date: 2025-06-03
"""

import math

from knapsack_dnc.common.data_types import AlgorithmTag, Solution, Subproblem
from knapsack_dnc.solvers.base_solver import BaseSolver
from knapsack_dnc.solvers.greedy import greedy_pass


class LinearRelaxationSolver(BaseSolver):
    """Optimum of the relaxation with 0 <= x(i) <= 1.

    The greedy prefix is packed whole and the split item fills the slack
    fractionally, which is optimal for efficiency-sorted items.
    """

    tag = AlgorithmTag.LP_RELAXATION

    def _solve(self, subproblem: Subproblem) -> Solution:
        outcome = greedy_pass(subproblem)
        decisions: list[float] = [float(x) for x in outcome.packed]
        objective = outcome.objective
        if not outcome.everything_fits and outcome.slack > 0:
            position = outcome.split - 1
            weight = subproblem.weights[position]
            profit = subproblem.profits[position]
            decisions[position] = outcome.slack / weight
            objective = math.fsum([objective, outcome.slack * profit / weight])
        return Solution(
            self.tag,
            objective,
            tuple(decisions),
            outcome.split,
            outcome.slack,
            subproblem.indices,
        )
