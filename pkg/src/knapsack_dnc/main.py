#!/usr/bin/env python3
"""main.py - Main entry point for the knapsack Divide-and-Conquer toolkit
Author: Dana Whitlock
Date: 2025-06-10

Commands:
1. solve - run one algorithm (or the whole chain) on an instance file
2. tree - build a D&C tree, solve its leaves and report the worst-case ratio
3. analyze - closed-form expectations on a capacity grid
4. simulate - Monte Carlo campaign checked against the closed forms
5. tables - reproduce the reference tables as CSV plus a diff report
6. oracle - exhaustive enumeration checks in exact arithmetic

Exit codes: 0 success, 1 a check failed, 2 bad input or IO failure.
"""

import dataclasses
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Iterable, Optional

from knapsack_dnc.analytics import (
    OddItemCount,
    asymptotics,
    capacities_mean,
    capacities_mean_sum,
    expectation_report,
    joint_slack_split,
    slack_distribution,
    slack_mean_given_split,
    split_distribution,
    weight_mean_given_split,
)
from knapsack_dnc.combinatorics import (
    hockey_stick_holds,
    index_shift_holds,
    odd_even_difference,
    odd_even_sums,
)
from knapsack_dnc.common.cli import ALL_ALGORITHMS, TABLE_CHOICES, setup_cli
from knapsack_dnc.common.config import default_output_dir
from knapsack_dnc.common.data_types import AlgorithmTag, FormulaVariant, Instance
from knapsack_dnc.common.logger import logger
from knapsack_dnc.core import (
    ChainViolation,
    InstanceError,
    InstanceFormatError,
    load_instance,
    solve,
    solve_chain,
)
from knapsack_dnc.dnc import (
    MinSizeViolated,
    WorstCaseViolation,
    build_tree,
    force_tree,
    gate_stops,
    solve_leaves,
    tree_to_record,
    worst_case_ratio,
)
from knapsack_dnc.performance import performance_params
from knapsack_dnc.randmodel import exhaustive_laws
from knapsack_dnc.reports import (
    DiffRow,
    ReportTable,
    bound_table,
    composition_table,
    deviation_table,
    diff,
    efficiency_table,
    empirical_table,
    ensure_dir,
    plot_series,
    summary_table,
    table_record,
    tree_estimate_table,
    trials_table,
    write_csv,
    write_diff_csv,
    write_json,
)
from knapsack_dnc.simulator import compare, run_campaign, verdicts_pass
from knapsack_dnc.solvers.dynamic_program import CapacityOverflow

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EMPIRICAL_DELTA = 63


def read_instance(file_path: str) -> Instance:
    """Load an instance file, exiting with the usage code on failure."""
    try:
        return load_instance(file_path)
    except OSError as e:
        logger.error(f"Error reading file {file_path}: {e}")
        sys.exit(EXIT_USAGE)
    except InstanceFormatError as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)
    except InstanceError as e:
        logger.error(f"Invalid instance {file_path}: {e}")
        sys.exit(EXIT_USAGE)


def _json_default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return float(value)
    return str(value)


def write_record(record: Any, output: Optional[str] = None) -> None:
    """Print a JSON record, or write it to a file."""
    text = json.dumps(record, indent=2, default=_json_default)
    if output is None:
        print(text)
        return
    try:
        with open(output, "w") as file:
            file.write(text + "\n")
    except IOError as e:
        logger.error(f"Error writing file {output}: {e}")
        sys.exit(EXIT_USAGE)
    logger.info(f"Wrote {output}")


def output_directory(out_dir: Optional[str]) -> str:
    try:
        return ensure_dir(out_dir or default_output_dir())
    except OSError as e:
        logger.error(f"Cannot create output directory: {e}")
        sys.exit(EXIT_USAGE)


def solve_instance(file_path: str, algorithm: str, output: Optional[str]) -> None:
    instance = read_instance(file_path)
    try:
        if algorithm == ALL_ALGORITHMS:
            chain = solve_chain(instance)
            record: Any = {tag.value: s.to_record() for tag, s in chain.items()}
        else:
            record = solve(instance, AlgorithmTag(algorithm)).to_record()
    except ChainViolation as e:
        logger.error(f"Ordering check failed: {e}")
        sys.exit(EXIT_CHECK_FAILED)
    except CapacityOverflow as e:
        logger.error(str(e))
        sys.exit(EXIT_USAGE)
    write_record(record, output)


def build_instance_tree(
    file_path: str,
    min_size: int,
    force_height: Optional[int],
    leaf_solver: AlgorithmTag,
    output: Optional[str],
) -> None:
    instance = read_instance(file_path)
    try:
        if force_height is None:
            tree = build_tree(instance, min_size)
        else:
            tree = force_tree(instance, force_height, min_size)
    except (MinSizeViolated, ValueError) as e:
        logger.error(f"Cannot build the tree: {e}")
        sys.exit(EXIT_USAGE)

    leaf_solutions = solve_leaves(tree, leaf_solver)
    record: dict[str, Any] = {
        "tree": tree_to_record(tree),
        "nodes": len(tree),
        "height": tree.height,
        "gate_stops": gate_stops(tree),
        "leaves": [
            {"marker": "".join(side.value for side in leaf.marker), **s.to_record()}
            for leaf, s in zip(tree.leaves(), leaf_solutions)
        ],
        "total": sum(s.objective for s in leaf_solutions),
    }
    try:
        record["worst_case_ratio"] = worst_case_ratio(
            instance, tree, strict=tree.root.gate_passed
        )
    except CapacityOverflow as e:
        logger.warning(f"Skipping the worst-case ratio: {e}")
    except WorstCaseViolation as e:
        logger.error(str(e))
        write_record(record, output)
        sys.exit(EXIT_CHECK_FAILED)
    write_record(record, output)


def analyze_grid(
    deltas: Iterable[int],
    variant: FormulaVariant,
    include_joint: bool,
    output: Optional[str],
) -> None:
    records = []
    for delta in deltas:
        try:
            report = expectation_report(delta, variant, include_joint)
        except ValueError as e:
            logger.error(f"delta={delta}: {e}")
            sys.exit(EXIT_USAGE)
        record = dataclasses.asdict(report)
        record["asymptotics"] = dataclasses.asdict(asymptotics(delta))
        if delta % 2 == 1 and delta > 1:
            record["performance"] = performance_params(delta, variant).to_record()
        records.append(record)
        logger.info(f"delta={delta}: E S={report.e_split:.4f}, E K={report.e_slack:.4f}")
    write_record(records, output)


def run_simulation(
    delta: int,
    seed: int,
    heights: list[int],
    trials: Optional[int],
    workers: int,
    min_size: int,
    leaf_solver: AlgorithmTag,
    variant: FormulaVariant,
    out_dir: Optional[str],
) -> None:
    directory = output_directory(out_dir)
    try:
        summary = run_campaign(
            delta, seed, heights, leaf_solver, trials, workers, min_size
        )
    except (OddItemCount, MinSizeViolated, ValueError) as e:
        logger.error(f"Cannot run the campaign: {e}")
        sys.exit(EXIT_USAGE)

    verdicts = compare(expectation_report(delta, variant, include_joint=False), summary)
    prefix = os.path.join(directory, f"campaign_delta{delta}")
    write_json(summary.to_record(), f"{prefix}.json")
    write_json({"verdicts": [v.to_record() for v in verdicts]}, f"{prefix}_verdicts.json")
    if summary.trees:
        write_csv(empirical_table(summary), f"{prefix}_trees.csv")
    write_json(
        {
            "command": "simulate",
            "seed": seed,
            "delta": delta,
            "heights": heights,
            "trials": summary.trials,
            "workers": workers,
            "variant": str(variant),
            "wall_time": summary.wall_time,
        },
        os.path.join(directory, "manifest.json"),
    )
    for verdict in verdicts:
        flag = "in " if verdict.inside else "OUT"
        print(
            f"[{flag}] {verdict.level:4} {verdict.variable:24} "
            f"analytic {verdict.analytic:12.4f}  "
            f"empirical {verdict.empirical:12.4f} +- {verdict.half_width:.4f}"
        )
    if not verdicts_pass(verdicts) or summary.ratio_violations:
        logger.error("Campaign checks failed")
        sys.exit(EXIT_CHECK_FAILED)


def build_tables(
    which: Iterable[int],
    seed: int,
    trials: Optional[int],
    workers: int,
    variant: FormulaVariant,
) -> list[ReportTable]:
    tables = []
    for number in sorted(set(which)):
        if number == 4:
            tables.append(deviation_table(variant=variant))
        elif number == 5:
            tables.append(efficiency_table(variant=variant))
        elif number == 6:
            tables.append(bound_table(variant=variant))
        elif number == 7:
            tables.append(summary_table(variant=variant))
        elif number == 8:
            summary = run_campaign(EMPIRICAL_DELTA, seed, trials=trials, workers=workers)
            tables.append(empirical_table(summary))
        elif number == 9:
            tables.append(tree_estimate_table())
        elif number == 10:
            tables.append(trials_table())
    return tables


def reproduce_tables(
    which: list[int],
    seed: int,
    trials: Optional[int],
    workers: int,
    variant: FormulaVariant,
    out_dir: Optional[str],
    emit_plot_data: bool,
) -> None:
    unknown = [number for number in which if number not in TABLE_CHOICES]
    if unknown:
        logger.error(f"Unknown table number(s) {unknown}; choose from {TABLE_CHOICES}")
        sys.exit(EXIT_USAGE)
    directory = output_directory(out_dir)
    start_time = time.time()
    tables = build_tables(which, seed, trials, workers, variant)
    diffs: list[DiffRow] = []
    for table in tables:
        write_csv(table, os.path.join(directory, table.file_name))
        diffs.extend(diff(table))
    write_diff_csv(diffs, os.path.join(directory, "table_diff.csv"))
    if emit_plot_data:
        write_json(plot_series(variant=variant), os.path.join(directory, "plot_data.json"))
    write_json(
        {
            "command": "tables",
            "tables": [table_record(table) for table in tables],
            "seed": seed,
            "variant": str(variant),
            "wall_time": time.time() - start_time,
        },
        os.path.join(directory, "manifest.json"),
    )
    failed = [entry for entry in diffs if entry.failed]
    outside = sum(1 for entry in diffs if not entry.within)
    print(
        f"{len(tables)} table(s), {len(diffs)} compared values, "
        f"{outside} outside tolerance, {len(failed)} failed checks"
    )
    if failed:
        sys.exit(EXIT_CHECK_FAILED)


def _mismatches(name: str, computed: dict, expected: dict) -> list[str]:
    issues = []
    for key in sorted(set(computed) | set(expected)):
        got = computed.get(key, Fraction(0))
        want = expected.get(key, Fraction(0))
        if got != want:
            issues.append(f"{name}[{key}]: enumeration {got} != closed form {want}")
    return issues


def oracle_checks(delta: int, max_n: int) -> list[str]:
    """Every exact mismatch between enumeration and closed forms."""
    laws = exhaustive_laws(delta)
    splits = range(2, delta + 2)
    issues = _mismatches("P(S)", laws.p_split, split_distribution(delta, exact=True))
    issues += _mismatches("P(K)", laws.p_slack, slack_distribution(delta, exact=True))
    issues += _mismatches(
        "P(K, S)",
        laws.joint,
        {
            (k, s): joint_slack_split(delta, k, s, exact=True)
            for s in splits
            for k in range(delta - s + 2)
        },
    )
    issues += _mismatches(
        "E(W(j) | S)",
        laws.e_weight_given_split,
        {
            (j, s): weight_mean_given_split(delta, s, exact=True)
            for s in laws.p_split
            for j in range(1, s)
        },
    )
    issues += _mismatches(
        "E(K | S)",
        laws.e_slack_given_split,
        {s: slack_mean_given_split(delta, s, exact=True) for s in laws.p_split},
    )
    if laws.e_cap_left is not None:
        enumerated = {"left": laws.e_cap_left, "right": laws.e_cap_right}
        summed = dict(zip(("left", "right"), capacities_mean_sum(delta)))
        closed = dict(zip(("left", "right"), capacities_mean(delta, exact=True)))
        issues += _mismatches("E C (sum)", enumerated, summed)
        issues += _mismatches("E C (closed)", enumerated, closed)
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            odd_total, even_total = odd_even_sums(n, m)
            if odd_total - even_total != odd_even_difference(n, m):
                issues.append(f"odd-even difference at n={n}, m={m}")
            if not (hockey_stick_holds(n, m) and index_shift_holds(n, m)):
                issues.append(f"binomial identity at n={n}, m={m}")
    return issues


def run_oracle(delta: int, max_n: int, out_dir: Optional[str]) -> None:
    try:
        issues = oracle_checks(delta, max_n)
    except ValueError as e:
        logger.error(f"Cannot run the oracle: {e}")
        sys.exit(EXIT_USAGE)
    directory = output_directory(out_dir)
    write_csv(
        composition_table(max_n), os.path.join(directory, "composition_discrepancies.csv")
    )
    for issue in issues:
        logger.error(issue)
    print(f"oracle delta={delta}, n<={max_n}: {len(issues)} mismatch(es)")
    if issues:
        sys.exit(EXIT_CHECK_FAILED)


def main() -> None:
    """Main entry point for the application."""
    args = setup_cli()

    if not args.command:
        logger.error("No command specified. Use --help for usage information.")
        sys.exit(EXIT_USAGE)

    if args.command == "solve":
        solve_instance(args.instance, args.alg, args.output)

    elif args.command == "tree":
        build_instance_tree(
            args.instance, args.min_size, args.force_height, args.leaf_alg, args.output
        )

    elif args.command == "analyze":
        analyze_grid(args.delta_grid, args.variant, not args.no_joint, args.out)

    elif args.command == "simulate":
        run_simulation(
            args.delta,
            args.seed,
            args.heights,
            args.trials,
            args.workers,
            args.min_size,
            args.leaf_alg,
            args.variant,
            args.out_dir,
        )

    elif args.command == "tables":
        reproduce_tables(
            args.which,
            args.seed,
            args.trials,
            args.workers,
            args.variant,
            args.out_dir,
            args.emit_plot_data,
        )

    elif args.command == "oracle":
        run_oracle(args.delta, args.max_n, args.out_dir)


if __name__ == "__main__":
    main()
