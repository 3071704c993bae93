"""greedy.py - Greedy prefix solver and its extensions
Author: Dana Whitlock
Date: 2025-06-03
"""

import math

import numpy as np

from knapsack_dnc.common.data_types import (
    AlgorithmTag,
    GreedyOutcome,
    Problem,
    Solution,
    Subproblem,
    as_subproblem,
)
from knapsack_dnc.solvers.base_solver import BaseSolver


def greedy_pass(problem: Problem) -> GreedyOutcome:
    """Pack items in order until the next one overflows."""
    subproblem = as_subproblem(problem)
    weights = np.asarray(subproblem.weights, dtype=np.int64)
    profits = subproblem.profits
    cumulative = np.cumsum(weights)
    # weights are positive so the running sum is strictly increasing
    packed_count = int(np.searchsorted(cumulative, subproblem.capacity, side="right"))
    used = int(cumulative[packed_count - 1]) if packed_count else 0
    packed = tuple(1 if i < packed_count else 0 for i in range(len(subproblem)))
    return GreedyOutcome(
        split=packed_count + 1,
        objective=math.fsum(profits[:packed_count]),
        slack=subproblem.capacity - used,
        packed=packed,
    )


def best_single_item(subproblem: Subproblem) -> int | None:
    """Relative position of the first most profitable item that fits."""
    best: int | None = None
    for position, (weight, profit) in enumerate(
        zip(subproblem.weights, subproblem.profits)
    ):
        if weight > subproblem.capacity:
            continue
        if best is None or profit > subproblem.profits[best]:
            best = position
    return best


def first_eligible_item(subproblem: Subproblem, outcome: GreedyOutcome) -> int | None:
    """Relative position of the first item after the split fitting the slack."""
    weights = subproblem.weights
    for position in range(outcome.split, len(weights)):
        if weights[position] <= outcome.slack:
            return position
    return None


class GreedySolver(BaseSolver):
    tag = AlgorithmTag.GREEDY

    def _solve(self, subproblem: Subproblem) -> Solution:
        outcome = greedy_pass(subproblem)
        return Solution(
            self.tag,
            outcome.objective,
            tuple(outcome.packed),
            outcome.split,
            outcome.slack,
            subproblem.indices,
        )


class ExtendedGreedySolver(BaseSolver):
    """Greedy prefix or the single best item, whichever earns more.

    Ties keep the greedy prefix. Only items fitting the capacity compete,
    which matters for subproblems where some items exceed the capacity.
    """

    tag = AlgorithmTag.EXTENDED_GREEDY

    def _solve(self, subproblem: Subproblem) -> Solution:
        outcome = greedy_pass(subproblem)
        decisions = list(outcome.packed)
        objective = outcome.objective
        best = best_single_item(subproblem)
        if best is not None and subproblem.profits[best] > objective:
            decisions = [0] * len(subproblem)
            decisions[best] = 1
            objective = subproblem.profits[best]
        return Solution(
            self.tag,
            objective,
            tuple(decisions),
            outcome.split,
            outcome.slack,
            subproblem.indices,
        )


class EligibleFirstSolver(BaseSolver):
    tag = AlgorithmTag.ELIGIBLE_FIRST

    def _solve(self, subproblem: Subproblem) -> Solution:
        outcome = greedy_pass(subproblem)
        decisions = list(outcome.packed)
        objective = outcome.objective
        eligible = first_eligible_item(subproblem, outcome)
        if eligible is not None:
            decisions[eligible] = 1
            objective = math.fsum([objective, subproblem.profits[eligible]])
        return Solution(
            self.tag,
            objective,
            tuple(decisions),
            outcome.split,
            outcome.slack,
            subproblem.indices,
        )


class FullGreedySolver(BaseSolver):
    """Single pass packing every item that still fits."""

    tag = AlgorithmTag.FULL_GREEDY

    def _solve(self, subproblem: Subproblem) -> Solution:
        outcome = greedy_pass(subproblem)
        residual = subproblem.capacity
        decisions = [0] * len(subproblem)
        for position, weight in enumerate(subproblem.weights):
            if weight <= residual:
                decisions[position] = 1
                residual -= weight
        objective = math.fsum(
            p for p, x in zip(subproblem.profits, decisions) if x == 1
        )
        return Solution(
            self.tag,
            objective,
            tuple(decisions),
            outcome.split,
            outcome.slack,
            subproblem.indices,
        )
