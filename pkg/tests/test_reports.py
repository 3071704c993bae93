import csv
import json

import pytest

from knapsack_dnc.analytics import ef_approx_deviation
from knapsack_dnc.common.data_types import AlgorithmTag
from knapsack_dnc.performance import performance_params
from knapsack_dnc.reports import (
    DiffRow,
    ReportTable,
    bound_table,
    composition_table,
    deviation_table,
    diff,
    efficiency_table,
    empirical_table,
    plot_series,
    summary_table,
    table_record,
    tree_estimate_table,
    trials_table,
    write_csv,
    write_diff_csv,
    write_json,
)
from knapsack_dnc.simulator import run_campaign


def read_rows(path):
    with open(path, newline="") as file:
        return list(csv.DictReader(file))


def test_trials_table_matches_reference():
    table = trials_table()
    assert [row["trials"] for row in table.rows] == [1127, 1152, 1165, 1171, 1174]
    diffs = diff(table)
    assert len(diffs) == 10
    assert not any(entry.failed for entry in diffs)


def test_trials_table_csv(tmp_path):
    path = tmp_path / "table10.csv"
    write_csv(trials_table(), str(path))
    rows = read_rows(path)
    assert list(rows[0]) == ["delta", "mu", "variance", "trials"]
    assert rows[0] == {"delta": "63", "mu": "64", "variance": "0.7329", "trials": "1127"}


def test_tree_estimates_pass_with_reference_means():
    table = tree_estimate_table()
    assert table.checked
    assert not any(entry.failed for entry in diff(table))


def test_tree_estimates_from_computed_means_are_unchecked():
    table = tree_estimate_table(performance_params(299))
    assert not table.checked
    assert not any(entry.failed for entry in diff(table))
    assert all(row["lb_gr"] >= 50 for row in table.rows)


def test_tree_estimates_include_left_split_tree():
    table = tree_estimate_table()
    assert [row["tree"] for row in table.rows] == ["h1", "h2", "h3", "h4", "ll-lr-r"]
    asymmetric = table.rows[-1]
    assert asymmetric["rho_ef"] == pytest.approx(99.88, abs=0.05)
    assert asymmetric["lb_gr"] == pytest.approx(58.16, abs=0.05)
    # no published row to diff the left-split tree against
    assert {entry.key for entry in diff(table)} == {"h1", "h2", "h3", "h4"}


def test_diff_row():
    entry = DiffRow(10, 63, "trials", 1128.0, 1127.0, 0.0, True)
    assert entry.deviation == 1.0
    assert not entry.within
    assert entry.failed
    assert not DiffRow(5, 49, "rho_lp", 91.3, 91.05, 0.5, False).failed


def test_diff_skips_rows_without_reference():
    table = ReportTable(
        4,
        "t",
        "delta",
        ["deviation"],
        rows=[{"delta": 7, "deviation": 1.0}],
        reference={10: {"deviation": 2.66}},
        tolerance={"deviation": 0.02},
    )
    assert diff(table) == []


def test_deviation_table():
    table = deviation_table(deltas=(10, 20))
    assert [row["delta"] for row in table.rows] == [10, 20]
    assert table.rows[0]["deviation"] == pytest.approx(ef_approx_deviation(10))
    assert not table.checked


def test_pair_tables():
    efficiency = efficiency_table(deltas=(49, 99))
    bounds = bound_table(deltas=(49, 99))
    assert efficiency.rows[0]["mu"] == 50
    assert set(efficiency.columns) >= {"rho_ef", "rho_lp_rt"}
    assert bounds.rows[1]["lb_gr"] == pytest.approx(
        bounds.rows[1]["lb_gr_lt"] + bounds.rows[1]["lb_gr_rt"]
    )
    assert len(diff(bounds)) == 12


def test_summary_table():
    table = summary_table(deltas=(49, 99, 149), summary_delta=299)
    mean, variance = table.rows
    assert mean["statistic"] == "mean"
    assert mean["lb_gr"] == pytest.approx(performance_params(299).lb_gr)
    assert all(value >= 0 for key, value in variance.items() if key != "statistic")


def test_empirical_table(tmp_path):
    summary = run_campaign(15, 3, heights=(1, 2), trials=12)
    table = empirical_table(summary)
    assert [row["height"] for row in table.rows] == [1, 2]
    assert table.rows[1]["nodes"] == 7
    assert table.columns.index("rho_gated") == table.columns.index("rho") + 1
    assert "gate_failed_below_half" in table.columns
    assert "lb_fg" in table.columns
    diffs = diff(table)
    assert {entry.column for entry in diffs if entry.key == 1} >= {"rho", "rho_gated"}
    # both tree readings are reported with their deviation, neither is checked
    assert not any(entry.checked for entry in diffs)
    assert summary.leaf_solver == AlgorithmTag.DYNAMIC_PROGRAM
    path = tmp_path / "table8.csv"
    write_csv(table, str(path))
    assert read_rows(path)[0]["gate_stops"].isdigit()


def test_composition_table(tmp_path):
    table = composition_table(6)
    assert all(row["difference"] == row["closed_form"] for row in table.rows)
    path = tmp_path / "compositions.csv"
    write_csv(table, str(path))
    assert list(read_rows(path)[0]) == [
        "n",
        "m",
        "compositions",
        "difference",
        "closed_form",
        "printed",
    ]


def test_diff_csv_and_json(tmp_path):
    table = trials_table(deltas=(63,))
    diff_path = tmp_path / "table_diff.csv"
    write_diff_csv(diff(table), str(diff_path))
    rows = read_rows(diff_path)
    assert {row["column"] for row in rows} == {"variance", "trials"}
    assert all(row["within"] == "True" for row in rows)

    json_path = tmp_path / "table.json"
    write_json(table_record(table), str(json_path))
    record = json.loads(json_path.read_text())
    assert record["number"] == 10
    assert record["rows"][0]["trials"] == 1127


def test_plot_series():
    series = plot_series(deltas=(49, 99))
    assert series["x"] == [49, 99]
    assert len(series["parameters"]["lb_ef_rt"]) == 2
    assert len(series["asymptotics"]["split_mean"]) == 2
