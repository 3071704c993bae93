import math

import pytest

from knapsack_dnc.common.data_types import AlgorithmTag, Subproblem
from knapsack_dnc.core import make_instance
from knapsack_dnc.randmodel import ModelParams, sample_stream
from knapsack_dnc.solvers.dynamic_program import DynamicProgramSolver
from knapsack_dnc.solvers.greedy import (
    EligibleFirstSolver,
    best_single_item,
    first_eligible_item,
    greedy_pass,
)
from knapsack_dnc.solvers.lp_relaxation import LinearRelaxationSolver

from .instances import brute_force_optimum


@pytest.fixture
def random_instances():
    return [sample.instance for sample in sample_stream(ModelParams(9, 11), 25)]


def test_dp_matches_brute_force(random_instances):
    solver = DynamicProgramSolver()
    for instance in random_instances:
        solution = solver.solve(instance)
        assert solution.objective == pytest.approx(brute_force_optimum(instance))
        load = sum(w for w, x in zip(instance.weights, solution.decisions) if x)
        assert load <= instance.capacity


def test_dp_on_subproblems(random_instances):
    solver = DynamicProgramSolver()
    for instance in random_instances:
        odd = Subproblem(instance, tuple(range(0, instance.size, 2)), 5)
        assert solver.solve(odd).objective == pytest.approx(brute_force_optimum(odd))


def test_dp_tie_returns_smallest_index_set():
    # {0, 3} and {1, 2} both reach 4.0
    instance = make_instance(4, [3, 2, 2, 1], [3.0, 2.0, 2.0, 1.0])
    solution = DynamicProgramSolver().solve(instance)
    assert solution.decisions == (1, 0, 0, 1)
    assert solution.objective == pytest.approx(4.0)
    assert solution.objective == pytest.approx(brute_force_optimum(instance))


def test_lp_is_an_upper_bound(random_instances):
    solver = LinearRelaxationSolver()
    for instance in random_instances:
        solution = solver.solve(instance)
        assert solution.objective >= brute_force_optimum(instance) - 1e-9
        load = math.fsum(w * x for w, x in zip(instance.weights, solution.decisions))
        assert load == pytest.approx(instance.capacity)


def test_greedy_slack_and_split(random_instances):
    for instance in random_instances:
        outcome = greedy_pass(instance)
        assert not outcome.everything_fits
        used = sum(instance.weights[: outcome.packed_count])
        assert outcome.slack == instance.capacity - used
        assert instance.weights[outcome.split - 1] > outcome.slack


def test_best_single_item_skips_oversized():
    instance = make_instance(6, [2, 6, 5], [8.0, 18.0, 5.0])
    assert best_single_item(Subproblem.root(instance)) == 1
    assert best_single_item(Subproblem(instance, (0, 1, 2), 5)) == 0
    assert best_single_item(Subproblem(instance, (1,), 5)) is None


def test_first_eligible_item_none_when_nothing_fits():
    instance = make_instance(5, [3, 4, 4], [9.0, 8.0, 4.0])
    subproblem = Subproblem.root(instance)
    outcome = greedy_pass(subproblem)
    assert outcome.slack == 2
    assert first_eligible_item(subproblem, outcome) is None
    solution = EligibleFirstSolver().solve(instance)
    assert solution.objective == pytest.approx(9.0)
    assert solution.algorithm == AlgorithmTag.ELIGIBLE_FIRST
