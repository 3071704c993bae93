"""cli.py - Set up command line arg parser for the knapsack toolkit
Author: Dana Whitlock
Date: 2025-06-10
"""

import argparse

from knapsack_dnc.common.config import (
    DEFAULT_SEED,
    FORMULA_VARIANT,
    MIN_SUBPROBLEM_SIZE,
    WORKERS,
)
from knapsack_dnc.common.data_types import AlgorithmTag, FormulaVariant
from knapsack_dnc.common.logger import PROJECT_DESCRIPTION, configure_logger

ALL_ALGORITHMS = "all"
TABLE_CHOICES = (4, 5, 6, 7, 8, 9, 10)


def int_list(text: str) -> list[int]:
    """Parse '1,2,3' into [1, 2, 3]."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma separated list")


def _add_variant(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--variant",
        type=lambda x: FormulaVariant(x),
        choices=list(FormulaVariant),
        default=FormulaVariant(FORMULA_VARIANT),
        help="How approximation formulas are evaluated. Default is the configured variant.",
    )


def _add_leaf_alg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--leaf-alg",
        type=lambda x: AlgorithmTag(x),
        choices=list(AlgorithmTag),
        default=AlgorithmTag.DYNAMIC_PROGRAM,
        help="Algorithm solving the tree leaves. Default is 'dp'.",
    )


def _add_out_dir(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out-dir",
        type=str,
        default=None,
        help="Output directory (default: $KNAPSACK_DNC_OUTPUT_DIR or the configured directory)",
    )


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description=PROJECT_DESCRIPTION)

    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose output"
    )

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Solve command
    solve_parser = subparsers.add_parser(
        "solve", help="Solve an instance with one algorithm or the whole family"
    )
    solve_parser.add_argument(
        "--instance", type=str, required=True, help="JSON or YAML instance file"
    )
    solve_parser.add_argument(
        "--alg",
        choices=[tag.value for tag in AlgorithmTag] + [ALL_ALGORITHMS],
        default=AlgorithmTag.DYNAMIC_PROGRAM.value,
        help="Algorithm to run, or 'all' for the full chain. Default is 'dp'.",
    )
    solve_parser.add_argument(
        "-o", "--output", type=str, help="Output file (default: standard output)"
    )

    # Tree command
    tree_parser = subparsers.add_parser(
        "tree", help="Build a Divide-and-Conquer tree and solve its leaves"
    )
    tree_parser.add_argument(
        "--instance", type=str, required=True, help="JSON or YAML instance file"
    )
    tree_parser.add_argument(
        "--min-size",
        type=int,
        default=MIN_SUBPROBLEM_SIZE,
        help=f"Minimum subproblem size. Default is {MIN_SUBPROBLEM_SIZE}.",
    )
    tree_parser.add_argument(
        "--force-height",
        type=int,
        default=None,
        help="Build the complete tree of this height, ignoring the greedy gate",
    )
    _add_leaf_alg(tree_parser)
    tree_parser.add_argument(
        "-o", "--output", type=str, help="Output file (default: standard output)"
    )

    # Analyze command
    analyze_parser = subparsers.add_parser(
        "analyze", help="Evaluate the closed-form expectations on a capacity grid"
    )
    analyze_parser.add_argument(
        "--delta-grid",
        type=int_list,
        required=True,
        help="Comma separated capacities, e.g. '7,63,299'",
    )
    _add_variant(analyze_parser)
    analyze_parser.add_argument(
        "--no-joint",
        action="store_true",
        help="Leave the joint slack/split table out of the output",
    )
    analyze_parser.add_argument(
        "--out", type=str, help="Output JSON file (default: standard output)"
    )

    # Simulate command
    simulate_parser = subparsers.add_parser(
        "simulate", help="Run a Monte Carlo campaign and compare it with the closed forms"
    )
    simulate_parser.add_argument("--delta", type=int, required=True, help="Capacity")
    simulate_parser.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="Campaign seed"
    )
    simulate_parser.add_argument(
        "--heights",
        type=int_list,
        default=[1, 2, 3, 4],
        help="Comma separated forced tree heights. Default is '1,2,3,4'.",
    )
    simulate_parser.add_argument(
        "--trials",
        type=int,
        default=None,
        help="Number of trials (default: the count needed for the confidence margin)",
    )
    simulate_parser.add_argument(
        "--workers", type=int, default=WORKERS, help="Worker processes"
    )
    simulate_parser.add_argument(
        "--min-size",
        type=int,
        default=MIN_SUBPROBLEM_SIZE,
        help=f"Minimum subproblem size. Default is {MIN_SUBPROBLEM_SIZE}.",
    )
    _add_leaf_alg(simulate_parser)
    _add_variant(simulate_parser)
    _add_out_dir(simulate_parser)

    # Tables command
    tables_parser = subparsers.add_parser(
        "tables", help="Reproduce the reference tables as CSV with a diff report"
    )
    tables_parser.add_argument(
        "--which",
        type=int_list,
        default=list(TABLE_CHOICES),
        help="Comma separated table numbers between 4 and 10. Default is all.",
    )
    tables_parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="Seed of the empirical tree campaign",
    )
    tables_parser.add_argument(
        "--trials",
        type=int,
        default=None,
        help="Trials of the empirical tree campaign (default: planned count)",
    )
    tables_parser.add_argument(
        "--workers", type=int, default=WORKERS, help="Worker processes"
    )
    _add_variant(tables_parser)
    _add_out_dir(tables_parser)
    tables_parser.add_argument(
        "--emit-plot-data",
        action="store_true",
        help="Also write (x, y) series of the pair parameters and asymptotics",
    )

    # Oracle command
    oracle_parser = subparsers.add_parser(
        "oracle", help="Exhaustive enumeration cross-checks in exact arithmetic"
    )
    oracle_parser.add_argument(
        "--delta", type=int, required=True, help="Capacity, at most 5"
    )
    oracle_parser.add_argument(
        "--max-n",
        type=int,
        default=14,
        help="Largest n for the composition identities. Default is 14.",
    )
    _add_out_dir(oracle_parser)

    return parser.parse_args()


def setup_cli() -> argparse.Namespace:
    args = parse_args()
    configure_logger(args.verbose)
    return args
