"""base_solver.py - Abstract base class for knapsack solvers
Author: Dana Whitlock
Date: 2025-06-03
"""

from abc import ABC, abstractmethod
from typing import ClassVar, Optional

from knapsack_dnc.common.data_types import (
    AlgorithmTag,
    Problem,
    Solution,
    Subproblem,
    as_subproblem,
)
from knapsack_dnc.common.logger import logger


class BaseSolver(ABC):
    """Abstract base class for all solvers of the bounding family."""

    tag: ClassVar[AlgorithmTag]

    def __init__(self, name: Optional[str] = None) -> None:
        self.name = name or self.__class__.__name__
        self._initialize()

    def _initialize(self) -> None:
        """Initialize the solver."""
        logger.debug(f"Initializing solver: {self.name}")

    def solve(self, problem: Problem) -> Solution:
        """Solve an instance or subproblem, indexing decisions by its items."""
        subproblem = as_subproblem(problem)
        solution = self._solve(subproblem)
        logger.debug(
            f"{self.name}: |V|={len(subproblem)} capacity={subproblem.capacity} "
            f"objective={solution.objective}"
        )
        return solution

    @abstractmethod
    def _solve(self, subproblem: Subproblem) -> Solution:
        """Solver specific work on a normalised subproblem."""
