"""dnc.py - Divide-and-Conquer pairs, trees and their worst-case certificates
Author: Dana Whitlock
Date: 2025-06-05
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from knapsack_dnc.common.config import MIN_SUBPROBLEM_SIZE
from knapsack_dnc.common.data_types import (
    AlgorithmTag,
    Instance,
    Side,
    Solution,
    Subproblem,
)
from knapsack_dnc.common.logger import logger
from knapsack_dnc.core import dp_optimal, extended_greedy, greedy, solve
from knapsack_dnc.randmodel import ModelParams, sample_stream


class InfeasibleControl(Exception):
    """Exception raised when a control vector overflows the root capacity."""

    def __init__(self, load: int, capacity: int):
        self.load = load
        self.capacity = capacity
        super().__init__(f"Control load {load} exceeds root capacity {capacity}")


class MinSizeViolated(Exception):
    """Exception raised when a forced branch would cut below 2 * min_size items."""

    def __init__(self, marker: Sequence[Side], size: int, min_size: int):
        self.marker = tuple(marker)
        self.size = size
        self.min_size = min_size
        super().__init__(
            f"Node '{format_marker(marker)}' has {size} items; "
            f"branching needs at least {2 * min_size}"
        )


class WorstCaseViolation(Exception):
    def __init__(self, ratio: float):
        self.ratio = ratio
        super().__init__(f"Tree ratio z*_T / z* = {ratio} is below 1/2")


def format_marker(marker: Sequence[Side]) -> str:
    return "".join(side.value for side in marker) or "root"


@dataclass
class DncNode:
    """A tree vertex: subproblem, path from the root, optional children."""

    subproblem: Subproblem
    marker: tuple[Side, ...] = ()
    left: Optional["DncNode"] = None
    right: Optional["DncNode"] = None
    # whether z^gr >= z^eg and the size bound allow branching this node
    gate_passed: bool = False

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("A D&C node has either no children or two.")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def children(self) -> tuple["DncNode", ...]:
        if self.left is None or self.right is None:
            return ()
        return (self.left, self.right)


@dataclass
class DncTree:
    root: DncNode
    min_size: int = MIN_SUBPROBLEM_SIZE

    @property
    def instance(self) -> Instance:
        return self.root.subproblem.parent

    def nodes(self) -> Iterator[DncNode]:
        """Pre-order walk, left before right."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children()))

    def leaves(self) -> list[DncNode]:
        return [node for node in self.nodes() if node.is_leaf]

    def internal_nodes(self) -> list[DncNode]:
        return [node for node in self.nodes() if not node.is_leaf]

    @property
    def height(self) -> int:
        return max(len(node.marker) for node in self.leaves())

    def __len__(self) -> int:
        return sum(1 for _ in self.nodes())


def branching_condition(subproblem: Subproblem, min_size: int) -> bool:
    """z^gr >= z^eg and |V| >= 2 * min_size."""
    if len(subproblem) < 2 * min_size:
        return False
    return greedy(subproblem).objective >= extended_greedy(subproblem).objective


def split_pair(subproblem: Subproblem) -> tuple[Subproblem, Subproblem]:
    """Odd/even relative positions, capacity = packed weight + half the slack."""
    outcome = greedy(subproblem)
    indices = subproblem.indices
    weights = subproblem.weights
    left_capacity = math.ceil(outcome.slack / 2)
    right_capacity = outcome.slack // 2
    for position in range(outcome.packed_count):
        if position % 2 == 0:
            left_capacity += weights[position]
        else:
            right_capacity += weights[position]
    parent = subproblem.parent
    left = Subproblem(parent, indices[0::2], left_capacity)
    right = Subproblem(parent, indices[1::2], right_capacity)
    return left, right


def branch(
    node: Subproblem, min_size: int = MIN_SUBPROBLEM_SIZE, force: bool = False
) -> Optional[tuple[Subproblem, Subproblem]]:
    """Children of a subproblem, or None when the branching condition fails.

    With ``force`` the greedy gate is skipped but the size bound still holds.
    """
    if len(node) < 2 * min_size:
        return None
    if not force and not branching_condition(node, min_size):
        return None
    return split_pair(node)


def _grow(node: DncNode, min_size: int, max_height: Optional[int]) -> None:
    children = branch(node.subproblem, min_size)
    node.gate_passed = children is not None
    if children is None:
        return
    if max_height is not None and len(node.marker) >= max_height:
        return
    left, right = children
    node.left = DncNode(left, node.marker + (Side.LEFT,))
    node.right = DncNode(right, node.marker + (Side.RIGHT,))
    logger.debug(
        f"Branched '{format_marker(node.marker)}': "
        f"capacities {left.capacity}/{right.capacity}"
    )
    _grow(node.left, min_size, max_height)
    _grow(node.right, min_size, max_height)


def build_tree(
    instance: Instance,
    min_size: int = MIN_SUBPROBLEM_SIZE,
    max_height: Optional[int] = None,
) -> DncTree:
    """Recursively branch while the branching condition holds.

    ``max_height`` caps the depth; a leaf cut there still records its gate.
    """
    if max_height is not None and max_height < 0:
        raise ValueError(f"Tree height must be non-negative, got {max_height}")
    root = DncNode(Subproblem.root(instance))
    _grow(root, min_size, max_height)
    tree = DncTree(root, min_size)
    check_structure(tree)
    return tree


def force_tree(
    instance: Instance, height: int, min_size: int = MIN_SUBPROBLEM_SIZE
) -> DncTree:
    """Complete tree of the given height, ignoring the greedy gate.

    Each node records whether the gate would have allowed its branching.
    """
    if height < 0:
        raise ValueError(f"Tree height must be non-negative, got {height}")

    def grow(node: DncNode) -> None:
        node.gate_passed = branching_condition(node.subproblem, min_size)
        if len(node.marker) == height:
            return
        if len(node.subproblem) < 2 * min_size:
            raise MinSizeViolated(node.marker, len(node.subproblem), min_size)
        left, right = split_pair(node.subproblem)
        node.left = DncNode(left, node.marker + (Side.LEFT,))
        node.right = DncNode(right, node.marker + (Side.RIGHT,))
        grow(node.left)
        grow(node.right)

    root = DncNode(Subproblem.root(instance))
    grow(root)
    tree = DncTree(root, min_size)
    check_structure(tree)
    return tree


def gate_stops(tree: DncTree) -> int:
    """Internal nodes whose branching the greedy gate would have refused."""
    return sum(1 for node in tree.internal_nodes() if not node.gate_passed)


def check_structure(tree: DncTree) -> None:
    """Children partition their parent, leaves partition the instance."""
    for node in tree.internal_nodes():
        left, right = node.children()
        merged = sorted(left.subproblem.indices + right.subproblem.indices)
        if merged != list(node.subproblem.indices):
            raise ValueError(f"Children of '{format_marker(node.marker)}' do not partition it")
        if left.subproblem.capacity + right.subproblem.capacity != node.subproblem.capacity:
            raise ValueError(
                f"Child capacities of '{format_marker(node.marker)}' do not sum up"
            )
    leaves = tree.leaves()
    covered = sorted(i for leaf in leaves for i in leaf.subproblem.indices)
    if covered != list(range(tree.instance.size)):
        raise ValueError("Leaf index sets do not partition the instance")
    if sum(leaf.subproblem.capacity for leaf in leaves) != tree.instance.capacity:
        raise ValueError("Leaf capacities do not sum to the root capacity")


def solve_leaves(
    tree: DncTree,
    leaf_solver: AlgorithmTag = AlgorithmTag.DYNAMIC_PROGRAM,
    workers: int = 1,
) -> list[Solution]:
    """Solve every leaf independently; results come back in leaf order."""
    subproblems = [leaf.subproblem for leaf in tree.leaves()]
    if workers <= 1 or len(subproblems) == 1:
        return [solve(sub, leaf_solver) for sub in subproblems]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda sub: solve(sub, leaf_solver), subproblems))


def tree_solve(
    tree: DncTree,
    leaf_solver: AlgorithmTag = AlgorithmTag.DYNAMIC_PROGRAM,
    workers: int = 1,
) -> Solution:
    """Union of leaf decisions; objective is the sum of leaf objectives."""
    decisions: list[float] = [0] * tree.instance.size
    leaf_solutions = solve_leaves(tree, leaf_solver, workers)
    for solution in leaf_solutions:
        for index, x in zip(solution.indices, solution.decisions):
            decisions[index] = x
    objective = math.fsum(solution.objective for solution in leaf_solutions)
    return Solution(leaf_solver, objective, tuple(decisions))


@dataclass(frozen=True)
class LeafLoad:
    marker: tuple[Side, ...]
    indices: tuple[int, ...]
    capacity: int
    load: int

    @property
    def fits(self) -> bool:
        return self.load <= self.capacity


@dataclass
class ControlReport:
    feasible: bool
    leaves: list[LeafLoad] = field(default_factory=list)
    control_value: float = 0.0
    tree_value: Optional[float] = None


def verify_control(
    tree: DncTree, decisions: Sequence[float], check_bound: bool = False
) -> ControlReport:
    """Check that a root-feasible vector stays feasible in every leaf.

    When it does, its value is a lower bound of z*_T; ``check_bound`` solves
    the leaves exactly and raises if that consequence fails.
    """
    instance = tree.instance
    if len(decisions) != instance.size:
        raise ValueError(
            f"Control vector has {len(decisions)} entries, instance has {instance.size}"
        )
    root_load = sum(w for w, x in zip(instance.weights, decisions) if x == 1)
    if root_load > instance.capacity:
        raise InfeasibleControl(root_load, instance.capacity)

    loads = []
    for leaf in tree.leaves():
        sub = leaf.subproblem
        load = sum(instance.weights[i] for i in sub.indices if decisions[i] == 1)
        loads.append(LeafLoad(leaf.marker, sub.indices, sub.capacity, load))
    report = ControlReport(
        feasible=all(entry.fits for entry in loads),
        leaves=loads,
        control_value=math.fsum(
            p for p, x in zip(instance.profits, decisions) if x == 1
        ),
    )
    if report.feasible and check_bound:
        report.tree_value = tree_solve(tree).objective
        if report.control_value > report.tree_value * (1 + 1e-9):
            raise ValueError(
                f"Control value {report.control_value} exceeds z*_T {report.tree_value}"
            )
    return report


def worst_case_ratio(instance: Instance, tree: DncTree, strict: bool = True) -> float:
    """z*_T / z*, which is at least 1/2 whenever the root passed the gate."""
    optimum = dp_optimal(instance).objective
    tree_value = tree_solve(tree).objective
    ratio = tree_value / optimum
    if ratio < 0.5:
        logger.warning(f"Worst-case ratio {ratio:.4f} below 1/2")
        if strict:
            raise WorstCaseViolation(ratio)
    return ratio


def greedy_monotonicity_failures(tree: DncTree) -> list[tuple[Side, ...]]:
    """Markers of internal nodes where z^gr > z^gr_lt + z^gr_rt."""
    failures = []
    for node in tree.internal_nodes():
        left, right = node.children()
        parent_value = greedy(node.subproblem).objective
        children_value = (
            greedy(left.subproblem).objective + greedy(right.subproblem).objective
        )
        if parent_value > children_value * (1 + 1e-12):
            failures.append(node.marker)
    return failures


@dataclass
class SweepReport:
    pairs: int = 0
    skipped_by_gate: int = 0
    ratio_violations: int = 0
    monotonicity_violations: int = 0
    control_violations: int = 0
    min_ratio: float = math.inf

    @property
    def clean(self) -> bool:
        return (
            self.ratio_violations == 0
            and self.monotonicity_violations == 0
            and self.control_violations == 0
        )


def max_forced_height(size: int, min_size: int) -> int:
    """Largest h with every node above the leaves holding >= 2 * min_size items."""
    height = 0
    smallest = size
    while smallest >= 2 * min_size:
        height += 1
        smallest //= 2
    return height


def worst_case_sweep(
    deltas: Iterable[int],
    count: int,
    seed: int,
    max_height: int = 4,
    min_size: int = 1,
) -> SweepReport:
    """Random (instance, forced tree) pairs checked against the 1/2 guarantee.

    Instances whose root fails the greedy gate are skipped; below the root
    branching is forced to complete trees of every height up to max_height.
    """
    report = SweepReport()
    for delta in deltas:
        heights = range(1, min(max_height, max_forced_height(delta + 1, min_size)) + 1)
        for random_instance in sample_stream(ModelParams(delta, seed), count):
            instance = random_instance.instance
            root = Subproblem.root(instance)
            if greedy(root).objective < extended_greedy(root).objective:
                report.skipped_by_gate += 1
                continue
            optimum = dp_optimal(instance).objective
            control = greedy(instance).packed
            for height in heights:
                tree = force_tree(instance, height, min_size)
                ratio = tree_solve(tree).objective / optimum
                report.pairs += 1
                report.min_ratio = min(report.min_ratio, ratio)
                if ratio < 0.5:
                    report.ratio_violations += 1
                report.monotonicity_violations += len(
                    greedy_monotonicity_failures(tree)
                )
                if not verify_control(tree, control).feasible:
                    report.control_violations += 1
    logger.info(
        f"Worst-case sweep: {report.pairs} pairs, {report.skipped_by_gate} skipped, "
        f"min ratio {report.min_ratio:.4f}, violations "
        f"{report.ratio_violations}/{report.monotonicity_violations}/"
        f"{report.control_violations}"
    )
    return report


def tree_to_record(tree: DncTree) -> dict:
    """Nested {indices, capacity, marker, children} export."""

    def record(node: DncNode) -> dict:
        return {
            "indices": list(node.subproblem.indices),
            "capacity": node.subproblem.capacity,
            "marker": "".join(side.value for side in node.marker),
            "children": [record(child) for child in node.children()],
        }

    return record(tree.root)


def leaf_markers(tree: DncTree) -> list[tuple[Side, ...]]:
    return [leaf.marker for leaf in tree.leaves()]
