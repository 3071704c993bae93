"""data_types.py - Common data types for knapsack problems and their solutions
Author: Dana Whitlock
Date: 2025-06-02

Item indices are 0-based everywhere. Split positions keep the 1-based
convention of the greedy analysis: ``split == 1`` means the first item of the
problem did not fit, ``split == len(problem) + 1`` means everything fit.
"""

import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Union

if sys.version_info >= (3, 11):
    from typing import Self
else:  # pragma: no cover - Python 3.10 fallback
    from typing_extensions import Self


class AlgorithmTag(Enum):
    """Members of the bounding algorithm family."""

    GREEDY = "gr"
    EXTENDED_GREEDY = "eg"
    ELIGIBLE_FIRST = "ef"
    FULL_GREEDY = "fg"
    LP_RELAXATION = "lp"
    DYNAMIC_PROGRAM = "dp"

    def __str__(self) -> str:
        return self.value


class Side(Enum):
    """Turn taken from a parent node to a child node."""

    LEFT = "l"
    RIGHT = "r"

    def __str__(self) -> str:
        return self.value


class FormulaVariant(Enum):
    """How approximation formulas are evaluated.

    PRINTED reproduces the published expressions, CORRECTED fixes their
    algebra, EXACT additionally uses the integer mean (k+1)/2 for the weight
    of the first eligible item.
    """

    PRINTED = "printed"
    CORRECTED = "corrected"
    EXACT = "exact"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Instance:
    """A concrete 0-1 knapsack problem.

    Attributes:
        capacity (int): Knapsack capacity (delta).
        weights (tuple[int, ...]): Item weights.
        profits (tuple[float, ...]): Item profits, index-aligned with weights.
    """

    capacity: int
    weights: tuple[int, ...]
    profits: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "profits", tuple(float(p) for p in self.profits))
        if len(self.weights) != len(self.profits):
            raise ValueError(
                f"weights ({len(self.weights)}) and profits ({len(self.profits)}) "
                "must have equal length"
            )
        if len(self.weights) == 0:
            raise ValueError("an instance needs at least one item")

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def size(self) -> int:
        """Number of items (mu)."""
        return len(self.weights)

    @property
    def efficiencies(self) -> tuple[float, ...]:
        return tuple(p / w for p, w in zip(self.profits, self.weights))

    def to_record(self) -> dict[str, Any]:
        return {
            "capacity": self.capacity,
            "weights": list(self.weights),
            "profits": list(self.profits),
        }


@dataclass(frozen=True)
class Subproblem:
    """An ordered subset of an instance's items with its own capacity."""

    parent: Instance
    indices: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if self.capacity < 0:
            raise ValueError(f"Subproblem capacity {self.capacity} is negative.")
        if self.capacity > self.parent.capacity:
            raise ValueError(
                f"Subproblem capacity {self.capacity} exceeds the parent capacity "
                f"{self.parent.capacity}."
            )
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("Subproblem indices must be strictly increasing.")
        if self.indices and not (
            0 <= self.indices[0] and self.indices[-1] < self.parent.size
        ):
            raise ValueError("Subproblem indices fall outside the parent instance.")

    @classmethod
    def root(cls, instance: Instance) -> Self:
        """The whole instance viewed as a subproblem."""
        return cls(instance, tuple(range(instance.size)), instance.capacity)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(self.parent.weights[i] for i in self.indices)

    @property
    def profits(self) -> tuple[float, ...]:
        return tuple(self.parent.profits[i] for i in self.indices)

    def to_record(self) -> dict[str, Any]:
        return {"indices": list(self.indices), "capacity": self.capacity}


Problem = Union[Instance, Subproblem]


def as_subproblem(problem: Problem) -> Subproblem:
    """Normalise either problem kind to a subproblem view."""
    if isinstance(problem, Subproblem):
        return problem
    return Subproblem.root(problem)


@dataclass(frozen=True)
class GreedyOutcome:
    """Result of the greedy prefix pass.

    Attributes:
        split (int): 1-based position of the split item within the problem.
        objective (float): Profit of the packed prefix (z^gr).
        slack (int): Capacity left after the prefix (k).
        packed (tuple[int, ...]): 0/1 decisions, ones exactly before the split.
    """

    split: int
    objective: float
    slack: int
    packed: tuple[int, ...]

    def __post_init__(self):
        if self.split < 1 or self.split > len(self.packed) + 1:
            raise ValueError(f"Split position {self.split} is out of range.")
        if self.slack < 0:
            raise ValueError(f"Slack {self.slack} is negative.")

    @property
    def packed_count(self) -> int:
        return self.split - 1

    @property
    def everything_fits(self) -> bool:
        return self.split == len(self.packed) + 1


@dataclass(frozen=True)
class Solution:
    """Decision vector and objective returned by a solver."""

    algorithm: AlgorithmTag
    objective: float
    decisions: tuple[float, ...]
    split: int | None = None
    slack: int | None = None
    indices: tuple[int, ...] = field(default=(), compare=False)

    @property
    def is_integral(self) -> bool:
        return all(x in (0, 1) for x in self.decisions)

    def selected(self) -> list[int]:
        """Instance indices of the fully packed items."""
        positions = self.indices or tuple(range(len(self.decisions)))
        return [i for i, x in zip(positions, self.decisions) if x == 1]

    def to_record(self) -> dict[str, Any]:
        return {
            "algorithm": self.algorithm.value,
            "objective": self.objective,
            "decisions": [x if x not in (0, 1) else int(x) for x in self.decisions],
            "split": self.split,
            "slack": self.slack,
        }
