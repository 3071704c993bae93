import pytest

from knapsack_dnc.common.data_types import AlgorithmTag, Side, Subproblem
from knapsack_dnc.core import make_instance
from knapsack_dnc.dnc import (
    InfeasibleControl,
    MinSizeViolated,
    branch,
    branching_condition,
    build_tree,
    check_structure,
    force_tree,
    gate_stops,
    greedy_monotonicity_failures,
    leaf_markers,
    max_forced_height,
    split_pair,
    tree_solve,
    tree_to_record,
    verify_control,
    worst_case_ratio,
    worst_case_sweep,
)

from .instances import (
    EXAMPLE_CAPACITY,
    EXAMPLE_PROFITS,
    EXAMPLE_WEIGHTS,
    EXAMPLE_X_OPT,
    EXAMPLE_Z_GR,
    EXAMPLE_Z_OPT,
    EXAMPLE_Z_TREE,
)

L, R = Side.LEFT, Side.RIGHT


@pytest.fixture
def instance():
    return make_instance(EXAMPLE_CAPACITY, EXAMPLE_WEIGHTS, EXAMPLE_PROFITS)


@pytest.fixture
def tree(instance):
    return build_tree(instance, min_size=2)


def test_split_pair_capacities(instance):
    left, right = split_pair(Subproblem.root(instance))
    assert left.indices == (0, 2, 4, 6)
    assert right.indices == (1, 3, 5, 7)
    assert left.capacity == 4
    assert right.capacity == 3


def test_branching_condition(instance):
    root = Subproblem.root(instance)
    assert branching_condition(root, 2)
    assert not branching_condition(root, 5)
    _, right = split_pair(root)
    assert not branching_condition(right, 2)
    assert branch(right, 2) is None
    assert branch(right, 2, force=True) is not None


def test_example_tree_shape(tree):
    assert len(tree) == 5
    assert tree.height == 2
    assert leaf_markers(tree) == [(L, L), (L, R), (R,)]
    leaves = [(leaf.subproblem.indices, leaf.subproblem.capacity) for leaf in tree.leaves()]
    assert leaves == [((0, 4), 4), ((2, 6), 0), ((1, 3, 5, 7), 3)]
    check_structure(tree)


def test_build_tree_records_gate(tree):
    assert [node.gate_passed for node in tree.internal_nodes()] == [True, True]
    assert [leaf.gate_passed for leaf in tree.leaves()] == [False, False, False]
    assert gate_stops(tree) == 0


def test_build_tree_max_height(instance):
    capped = build_tree(instance, min_size=2, max_height=1)
    assert leaf_markers(capped) == [(L,), (R,)]
    left, right = capped.leaves()
    # the left child could branch further, the right one fails the gate
    assert left.gate_passed
    assert not right.gate_passed
    assert len(build_tree(instance, min_size=2, max_height=0)) == 1
    with pytest.raises(ValueError):
        build_tree(instance, max_height=-1)


def test_example_tree_solution(tree, instance):
    solution = tree_solve(tree)
    assert solution.objective == pytest.approx(EXAMPLE_Z_TREE)
    assert solution.decisions == (1, 0, 0, 1, 0, 0, 0, 0)
    assert tree_solve(tree, workers=2).objective == pytest.approx(EXAMPLE_Z_TREE)
    assert solution.objective >= EXAMPLE_Z_GR
    ratio = worst_case_ratio(instance, tree)
    assert ratio == pytest.approx(EXAMPLE_Z_TREE / EXAMPLE_Z_OPT)


def test_tree_with_bounding_leaves(tree):
    greedy_value = tree_solve(tree, AlgorithmTag.GREEDY).objective
    lp_value = tree_solve(tree, AlgorithmTag.LP_RELAXATION).objective
    assert greedy_value == pytest.approx(EXAMPLE_Z_GR)
    assert lp_value == pytest.approx(23.6)


def test_tree_record(tree):
    record = tree_to_record(tree)
    assert record["capacity"] == 7
    assert record["marker"] == ""
    assert [child["marker"] for child in record["children"]] == ["l", "r"]
    assert record["children"][1]["children"] == []


def test_force_tree_records_gate(instance):
    forced = force_tree(instance, 2, min_size=2)
    assert len(forced) == 7
    assert forced.height == 2
    assert gate_stops(forced) == 1
    check_structure(forced)


def test_force_tree_min_size(instance):
    with pytest.raises(MinSizeViolated) as error:
        force_tree(instance, 3, min_size=2)
    assert error.value.size == 2
    assert len(error.value.marker) == 2


def test_force_tree_height_zero(instance):
    forced = force_tree(instance, 0)
    assert len(forced) == 1
    assert tree_solve(forced).objective == pytest.approx(EXAMPLE_Z_OPT)


def test_control_solution(tree):
    greedy_control = (1, 1, 0, 0, 0, 0, 0, 0)
    report = verify_control(tree, greedy_control, check_bound=True)
    assert report.feasible
    assert report.control_value == pytest.approx(EXAMPLE_Z_GR)
    assert report.tree_value == pytest.approx(EXAMPLE_Z_TREE)

    optimum_report = verify_control(tree, EXAMPLE_X_OPT)
    assert not optimum_report.feasible
    overloaded = [entry.marker for entry in optimum_report.leaves if not entry.fits]
    assert overloaded == [(L, R)]


def test_infeasible_control(tree):
    with pytest.raises(InfeasibleControl):
        verify_control(tree, (1,) * 8)
    with pytest.raises(ValueError):
        verify_control(tree, (1, 0))


def test_greedy_monotonicity(tree):
    assert greedy_monotonicity_failures(tree) == []


@pytest.mark.parametrize(
    "size, min_size, height",
    [(8, 2, 2), (8, 1, 3), (3, 2, 0), (64, 2, 5)],
)
def test_max_forced_height(size, min_size, height):
    assert max_forced_height(size, min_size) == height


def test_small_worst_case_sweep():
    report = worst_case_sweep([7, 9, 15], count=12, seed=5, max_height=3)
    assert report.pairs > 0
    assert report.clean
    assert report.min_ratio >= 0.5


@pytest.mark.slow
def test_worst_case_sweep():
    report = worst_case_sweep(range(5, 41, 2), count=200, seed=17, max_height=4)
    assert report.clean


@pytest.mark.slow
def test_worst_case_sweep_large_capacities():
    pairs = 0
    seed = 100
    while pairs < 10_000:
        report = worst_case_sweep([15, 63], count=500, seed=seed, max_height=4)
        assert report.clean
        assert report.min_ratio >= 0.5
        pairs += report.pairs
        seed += 1
        assert seed < 150
