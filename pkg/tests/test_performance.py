import pytest

from knapsack_dnc.analytics import OddItemCount
from knapsack_dnc.common.data_types import Side
from knapsack_dnc.core import make_instance
from knapsack_dnc.dnc import build_tree
from knapsack_dnc.performance import (
    PARAMETERS,
    REFERENCE_SIDE_MEANS,
    WORST_CASE_FLOOR,
    PerformanceParams,
    example_tree_markers,
    full_tree_markers,
    parse_marker,
    performance_params,
    tree_performance,
    vertex_factor,
)

from .instances import EXAMPLE_CAPACITY, EXAMPLE_PROFITS, EXAMPLE_WEIGHTS

L, R = Side.LEFT, Side.RIGHT


@pytest.fixture
def params():
    return REFERENCE_SIDE_MEANS


def test_reference_totals(params):
    assert params.rho_ef == pytest.approx(99.93)
    assert params.rho_lp == pytest.approx(92.59)
    assert params.lb_gr == pytest.approx(71.98)
    assert params.lb_ef == pytest.approx(79.72)
    assert params.side("lb_gr", L) == pytest.approx(49.23)
    assert params.violations() == []


@pytest.mark.parametrize(
    "height, expected",
    [
        (1, (99.93, 92.59, 71.98, 79.72)),
        (2, (99.86, 85.73, 51.81, 63.55)),
        (3, (99.79, 79.38, 50.00, 50.66)),
        (4, (99.72, 73.49, 50.00, 50.00)),
    ],
)
def test_complete_tree_estimates(params, height, expected):
    totals = tree_performance(height, params).totals
    for name, value in zip(PARAMETERS, expected):
        assert totals[name] == pytest.approx(value, abs=0.05), name


def test_floor_applies(params):
    totals = tree_performance(4, params).totals
    assert totals["lb_gr"] == WORST_CASE_FLOOR
    assert totals["lb_ef"] == WORST_CASE_FLOOR


def test_asymmetric_tree(params):
    result = tree_performance(example_tree_markers(), params)
    assert set(result.leaves) == {"ll", "lr", "r"}
    assert result.leaves["ll"]["rho_ef"] == pytest.approx(46.77, abs=0.01)
    assert result.leaves["lr"]["rho_ef"] == pytest.approx(21.57, abs=0.01)
    assert result.totals["rho_ef"] == pytest.approx(99.88, abs=0.01)
    assert result.totals["lb_gr"] == pytest.approx(58.16, abs=0.05)


def test_tree_shape_from_dnc_tree(params):
    instance = make_instance(EXAMPLE_CAPACITY, EXAMPLE_WEIGHTS, EXAMPLE_PROFITS)
    tree = build_tree(instance, min_size=2)
    assert tree_performance(tree, params) == tree_performance(
        example_tree_markers(), params
    )


def test_root_only(params):
    result = tree_performance(0, params)
    assert result.leaves == {"root": {name: 100.0 for name in PARAMETERS}}


def test_markers():
    assert full_tree_markers(2) == [(L, L), (L, R), (R, L), (R, R)]
    assert parse_marker("llr") == (L, L, R)
    assert parse_marker("root") == ()
    with pytest.raises(ValueError):
        parse_marker("lx")


def test_vertex_factor(params):
    assert vertex_factor((L, R), params, "rho_lp") == pytest.approx(
        64.64 * 27.95 / 100
    )


def test_params_at_summary_delta():
    params = performance_params(299)
    assert params.lb_gr == pytest.approx(params.lb_gr_lt + params.lb_gr_rt)
    assert params.lb_gr == pytest.approx(71.98, abs=1.0)
    assert params.lb_gr_lt > params.lb_gr_rt
    assert params.lb_gr < params.lb_ef < params.rho_lp
    assert params.violations() == []


def test_params_need_odd_delta():
    with pytest.raises(OddItemCount):
        performance_params(300)


def test_violation_reported():
    broken = PerformanceParams.from_sides(
        {
            "rho_ef": (60.0, 30.0),
            "rho_lp": (60.0, 30.0),
            "lb_gr": (50.0, 30.0),
            "lb_ef": (40.0, 30.0),
        }
    )
    assert len(broken.violations()) == 1
