"""
Knapsack D&C - Library API for 0-1 knapsack solvers, Divide-and-Conquer trees,
closed-form expectations and Monte Carlo verification
"""

from .analytics import expectation_report
from .common.data_types import AlgorithmTag, FormulaVariant, Instance, Solution
from .core import load_instance, make_instance, solve, solve_chain
from .dnc import build_tree, force_tree, tree_solve
from .performance import performance_params, tree_performance
from .simulator import Verdict, compare, plan_trials, run_campaign

# Expose main library functions
__all__ = [
    "AlgorithmTag",
    "FormulaVariant",
    "Instance",
    "Solution",
    "Verdict",
    "build_tree",
    "compare",
    "expectation_report",
    "force_tree",
    "load_instance",
    "make_instance",
    "performance_params",
    "plan_trials",
    "run_campaign",
    "solve",
    "solve_chain",
    "tree_performance",
    "tree_solve",
    "solve_file",
    "verify_campaign",
]


def solve_file(file_path: str, algorithm: str = "dp") -> Solution:
    """Load an instance file and run one algorithm on it.

    Args:
        file_path: JSON or YAML instance file
        algorithm: Algorithm tag - "gr", "eg", "ef", "fg", "lp" or "dp"

    Returns:
        The solution of the whole instance
    """
    return solve(load_instance(file_path), AlgorithmTag(algorithm))


def verify_campaign(
    delta: int, seed: int, trials: int | None = None, workers: int = 1
) -> tuple[bool, list[Verdict]]:
    """Run a campaign without trees and compare it with the closed forms.

    Returns:
        Whether every gate passed, and the verdict rows
    """
    summary = run_campaign(delta, seed, heights=(), trials=trials, workers=workers)
    verdicts = compare(expectation_report(delta, include_joint=False), summary)
    return all(not verdict.failed for verdict in verdicts), verdicts
