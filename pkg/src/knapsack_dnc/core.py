"""core.py - Knapsack instances, validation and the bounding algorithm family
Author: Dana Whitlock
Date: 2025-06-03

Every algorithm accepts either an ``Instance`` or a ``Subproblem`` and works
on relative positions inside the problem's item list.
"""

import json
from typing import Any, Iterable, Optional

import yaml

from knapsack_dnc.common.config import EFFICIENCY_TOLERANCE
from knapsack_dnc.common.data_types import (
    AlgorithmTag,
    GreedyOutcome,
    Instance,
    Problem,
    Solution,
)
from knapsack_dnc.common.logger import logger
from knapsack_dnc.solvers.base_solver import BaseSolver
from knapsack_dnc.solvers.dynamic_program import CapacityOverflow, DynamicProgramSolver
from knapsack_dnc.solvers.greedy import (
    EligibleFirstSolver,
    ExtendedGreedySolver,
    FullGreedySolver,
    GreedySolver,
    greedy_pass,
)
from knapsack_dnc.solvers.lp_relaxation import LinearRelaxationSolver

__all__ = [
    "CapacityOverflow",
    "ChainViolation",
    "InstanceError",
    "InstanceFormatError",
    "NonPositiveProfit",
    "NonPositiveWeight",
    "OversizedItem",
    "TrivialInstance",
    "UnsortedEfficiencies",
    "dp_optimal",
    "dump_instance",
    "eligible_first",
    "extended_greedy",
    "full_greedy",
    "greedy",
    "load_instance",
    "lp_relax",
    "make_instance",
    "parse_instance",
    "solve",
    "solve_chain",
    "validate",
]

CHAIN_TOLERANCE = 1e-9


class InstanceError(Exception):
    """Base class for instances violating the non-triviality/sorting rules."""


class NonPositiveWeight(InstanceError):
    def __init__(self, index: int, weight: int):
        self.index = index
        self.weight = weight
        super().__init__(f"Item {index} has non-positive weight {weight}")


class NonPositiveProfit(InstanceError):
    def __init__(self, index: int, profit: float):
        self.index = index
        self.profit = profit
        super().__init__(f"Item {index} has non-positive profit {profit}")


class OversizedItem(InstanceError):
    def __init__(self, index: int, weight: int, capacity: int):
        self.index = index
        self.weight = weight
        self.capacity = capacity
        super().__init__(f"Item {index} weighs {weight} > capacity {capacity}")


class TrivialInstance(InstanceError):
    def __init__(self, total_weight: int, capacity: int):
        self.total_weight = total_weight
        self.capacity = capacity
        super().__init__(
            f"Total weight {total_weight} fits in capacity {capacity}; "
            "the instance is trivial"
        )


class UnsortedEfficiencies(InstanceError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(
            f"Efficiency increases between items {index} and {index + 1}; "
            "sort items by non-increasing p/w first"
        )


class InstanceFormatError(Exception):
    """Exception raised for unreadable or malformed instance documents."""

    def __init__(self, source: str, message: str, line: Optional[int] = None):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class ChainViolation(Exception):
    """Exception raised when z^gr <= ... <= z^lp fails on an instance."""

    def __init__(self, lower: str, upper: str, values: dict[str, float]):
        self.lower = lower
        self.upper = upper
        self.values = values
        super().__init__(
            f"Ordering violated: {lower}={values[lower]} > {upper}={values[upper]}"
        )


def validate(instance: Instance) -> Instance:
    """Check the non-triviality and sorting rules; never repairs the input."""
    if instance.capacity < 1:
        raise InstanceError(f"Capacity {instance.capacity} must be positive")
    for index, weight in enumerate(instance.weights):
        if weight <= 0:
            raise NonPositiveWeight(index, weight)
        if weight > instance.capacity:
            raise OversizedItem(index, weight, instance.capacity)
    for index, profit in enumerate(instance.profits):
        if not profit > 0:
            raise NonPositiveProfit(index, profit)
    total_weight = sum(instance.weights)
    if total_weight <= instance.capacity:
        raise TrivialInstance(total_weight, instance.capacity)

    w, p = instance.weights, instance.profits
    for index in range(instance.size - 1):
        # g(i) >= g(i+1) cross-multiplied; tolerance absorbs p = g*w rounding
        if p[index] * w[index + 1] < p[index + 1] * w[index] * (
            1.0 - EFFICIENCY_TOLERANCE
        ):
            raise UnsortedEfficiencies(index)
    return instance


def make_instance(
    capacity: int, weights: Iterable[int], profits: Iterable[float]
) -> Instance:
    """Build and validate an instance from raw values."""
    return validate(Instance(capacity, tuple(weights), tuple(profits)))


def greedy(problem: Problem) -> GreedyOutcome:
    """Greedy prefix: split position, objective, slack and packed vector."""
    return greedy_pass(problem)


SOLVERS: dict[AlgorithmTag, BaseSolver] = {
    AlgorithmTag.GREEDY: GreedySolver(),
    AlgorithmTag.EXTENDED_GREEDY: ExtendedGreedySolver(),
    AlgorithmTag.ELIGIBLE_FIRST: EligibleFirstSolver(),
    AlgorithmTag.FULL_GREEDY: FullGreedySolver(),
    AlgorithmTag.LP_RELAXATION: LinearRelaxationSolver(),
    AlgorithmTag.DYNAMIC_PROGRAM: DynamicProgramSolver(),
}


def solve(problem: Problem, algorithm: AlgorithmTag) -> Solution:
    """Run one member of the algorithm family."""
    return SOLVERS[algorithm].solve(problem)


def extended_greedy(problem: Problem) -> Solution:
    return solve(problem, AlgorithmTag.EXTENDED_GREEDY)


def eligible_first(problem: Problem) -> Solution:
    return solve(problem, AlgorithmTag.ELIGIBLE_FIRST)


def full_greedy(problem: Problem) -> Solution:
    return solve(problem, AlgorithmTag.FULL_GREEDY)


def lp_relax(problem: Problem) -> Solution:
    return solve(problem, AlgorithmTag.LP_RELAXATION)


def dp_optimal(problem: Problem, max_cells: Optional[int] = None) -> Solution:
    """Exact optimum; raises CapacityOverflow above the configured table size."""
    if max_cells is None:
        return solve(problem, AlgorithmTag.DYNAMIC_PROGRAM)
    return DynamicProgramSolver(max_cells=max_cells).solve(problem)


def _check_chain(values: dict[str, float]) -> None:
    pairs = [
        ("gr", "ef"),
        ("gr", "eg"),
        ("ef", "fg"),
        ("fg", "dp"),
        ("eg", "dp"),
        ("dp", "lp"),
    ]
    for lower, upper in pairs:
        if values[lower] > values[upper] + CHAIN_TOLERANCE * max(
            1.0, abs(values[upper])
        ):
            raise ChainViolation(lower, upper, values)


def solve_chain(problem: Problem) -> dict[AlgorithmTag, Solution]:
    """Run every algorithm and assert z^gr <= min(z^ef, z^eg) <= z^fg <= z* <= z^lp.

    The extended greedy value is bounded by z* rather than z^fg: the best
    single item need not be picked by the full greedy pass.
    """
    solutions = {tag: solve(problem, tag) for tag in AlgorithmTag}
    _check_chain({tag.value: s.objective for tag, s in solutions.items()})
    return solutions


def parse_instance(text: str, source: str = "<string>") -> dict[str, Any]:
    """Parse a JSON or YAML instance document into its raw record."""
    if not text.strip():
        raise InstanceFormatError(source, "empty document", 1)
    try:
        record = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise InstanceFormatError(source, f"parse error: {e}", line) from e
    if not isinstance(record, dict):
        raise InstanceFormatError(source, "top level must be a record", 1)
    for key in ("capacity", "weights", "profits"):
        if key not in record:
            raise InstanceFormatError(source, f"missing field '{key}'")
    if not isinstance(record["weights"], list) or not isinstance(
        record["profits"], list
    ):
        raise InstanceFormatError(source, "'weights' and 'profits' must be arrays")
    if not all(isinstance(w, int) and not isinstance(w, bool) for w in record["weights"]):
        raise InstanceFormatError(source, "'weights' must hold integers")
    return record


def load_instance(file_path: str) -> Instance:
    """Read and validate an instance file."""
    logger.debug(f"Loading instance from {file_path}")
    with open(file_path, "r") as file:
        record = parse_instance(file.read(), file_path)
    try:
        instance = Instance(
            int(record["capacity"]), tuple(record["weights"]), tuple(record["profits"])
        )
    except (TypeError, ValueError) as e:
        raise InstanceFormatError(file_path, str(e)) from e
    return validate(instance)


def dump_instance(
    instance: Instance, increments: Optional[Iterable[float]] = None
) -> str:
    """Serialise an instance (and optionally its increments) as JSON."""
    record = instance.to_record()
    if increments is not None:
        record["increments"] = [float(t) for t in increments]
    return json.dumps(record, indent=2)
