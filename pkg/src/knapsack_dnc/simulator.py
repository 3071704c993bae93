"""simulator.py - Monte Carlo campaigns over the random knapsack model
Author: Dana Whitlock
Date: 2025-06-08

A campaign samples ``n`` instances of one capacity, runs the whole algorithm
family on each, measures the height-1 pair and solves forced complete trees
of the requested heights next to gate-driven trees capped at the same
heights. Trials are independent and seeded per trial, so the summary does
not depend on the worker count: records are always reduced in trial order.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np

from knapsack_dnc.analytics import (
    ExpectationReport,
    OddItemCount,
    ef_mean_exact,
    split_var,
)
from knapsack_dnc.common.config import (
    CONFIDENCE_MARGIN,
    CONFIDENCE_Z,
    DEFAULT_SEED,
    MIN_SUBPROBLEM_SIZE,
    WORKERS,
)
from knapsack_dnc.common.data_types import AlgorithmTag, FormulaVariant, Subproblem
from knapsack_dnc.common.logger import logger
from knapsack_dnc.core import greedy, lp_relax, solve, solve_chain
from knapsack_dnc.dnc import (
    branching_condition,
    build_tree,
    force_tree,
    gate_stops,
    split_pair,
    tree_solve,
)
from knapsack_dnc.randmodel import ModelParams, sample_trial

ROOT_VARIABLES = ("S", "K", "Z_gr", "Z_eg", "Z_ef", "Z_fg", "Z_lp", "Z_opt")
PAIR_VARIABLES = (
    "C_lt",
    "C_rt",
    "S_lt",
    "S_rt",
    "K_lt",
    "K_rt",
    "Z_gr_lt",
    "Z_gr_rt",
    "Z_ef_lt",
    "Z_ef_rt",
    "Z_lp_lt",
    "Z_lp_rt",
)
TREE_ALGORITHMS = {
    "gr": AlgorithmTag.GREEDY,
    "ef": AlgorithmTag.ELIGIBLE_FIRST,
    "fg": AlgorithmTag.FULL_GREEDY,
    "lp": AlgorithmTag.LP_RELAXATION,
}
# name -> (tree numerator suffix, root denominator)
TREE_RATIOS = {
    "rho": ("leaf", "Z_opt"),
    "rho_gated": ("gated", "Z_opt"),
    "rho_ef": ("ef", "Z_ef"),
    "rho_lp": ("lp", "Z_lp"),
    "lb_gr": ("gr", "Z_lp"),
    "lb_ef": ("ef", "Z_lp"),
    "lb_fg": ("fg", "Z_lp"),
}


@dataclass(frozen=True)
class TrialPlan:
    delta: int
    variance: float
    trials: int


def plan_trials(
    delta: int, z: float = CONFIDENCE_Z, margin: float = CONFIDENCE_MARGIN
) -> TrialPlan:
    """n = ceil((z / margin)^2 * Var S), never fewer than one trial."""
    variance = float(split_var(delta, exact=False))
    trials = max(1, math.ceil((z / margin) ** 2 * variance))
    return TrialPlan(delta, variance, trials)


@dataclass(frozen=True)
class TrialTask:
    delta: int
    seed: int
    trial: int
    heights: tuple[int, ...]
    leaf_solver: AlgorithmTag
    min_size: int


def tree_key(height: int, suffix: str) -> str:
    return f"T{height}_{suffix}"


def _side_record(side: Subproblem, suffix: str) -> dict[str, float]:
    outcome = greedy(side)
    return {
        f"S_{suffix}": outcome.split,
        f"K_{suffix}": outcome.slack,
        f"Z_gr_{suffix}": outcome.objective,
        f"Z_ef_{suffix}": solve(side, AlgorithmTag.ELIGIBLE_FIRST).objective,
        f"Z_lp_{suffix}": lp_relax(side).objective,
    }


def run_trial(task: TrialTask) -> dict[str, float]:
    """Every measured variable of one sampled instance."""
    instance = sample_trial(ModelParams(task.delta, task.seed), task.trial).instance
    chain = solve_chain(instance)
    root = chain[AlgorithmTag.GREEDY]
    record: dict[str, float] = {
        "S": root.split,
        "K": root.slack,
        "Z_gr": root.objective,
        "Z_eg": chain[AlgorithmTag.EXTENDED_GREEDY].objective,
        "Z_ef": chain[AlgorithmTag.ELIGIBLE_FIRST].objective,
        "Z_fg": chain[AlgorithmTag.FULL_GREEDY].objective,
        "Z_lp": chain[AlgorithmTag.LP_RELAXATION].objective,
        "Z_opt": chain[AlgorithmTag.DYNAMIC_PROGRAM].objective,
    }
    if task.delta % 2 == 1:
        left, right = split_pair(Subproblem.root(instance))
        record["C_lt"] = left.capacity
        record["C_rt"] = right.capacity
        record.update(_side_record(left, "lt"))
        record.update(_side_record(right, "rt"))
    # the 1/2 guarantee of a tree only covers roots with z^gr >= z^eg
    record["root_gate"] = float(
        branching_condition(Subproblem.root(instance), task.min_size)
    )
    for height in task.heights:
        tree = force_tree(instance, height, task.min_size)
        record[tree_key(height, "leaf")] = tree_solve(tree, task.leaf_solver).objective
        for suffix, tag in TREE_ALGORITHMS.items():
            record[tree_key(height, suffix)] = tree_solve(tree, tag).objective
        record[tree_key(height, "gate_stops")] = gate_stops(tree)
        gated = build_tree(instance, task.min_size, max_height=height)
        record[tree_key(height, "gated")] = tree_solve(gated, task.leaf_solver).objective
    logger.debug(f"Trial {task.trial}: S={record['S']}, K={record['K']}")
    return record


@dataclass(frozen=True)
class VariableStats:
    name: str
    count: int
    mean: float
    variance: float
    half_width: float

    @classmethod
    def of(
        cls, name: str, values: np.ndarray, z: float = CONFIDENCE_Z
    ) -> "VariableStats":
        count = len(values)
        mean = float(np.mean(values))
        variance = float(np.var(values, ddof=1)) if count > 1 else 0.0
        return cls(name, count, mean, variance, z * math.sqrt(variance / count))

    def contains(self, value: float) -> bool:
        """Whether value lies in the CI; degenerate intervals need a match."""
        if self.half_width == 0:
            return math.isclose(value, self.mean, rel_tol=1e-9, abs_tol=1e-12)
        return abs(value - self.mean) <= self.half_width


@dataclass
class HeightSummary:
    height: int
    nodes: int
    gate_stops: int
    ratio_violations: int
    gate_failed_below_half: int = 0
    ratio_of_means: dict[str, float] = field(default_factory=dict)
    mean_of_ratios: dict[str, float] = field(default_factory=dict)


@dataclass
class EmpiricalSummary:
    delta: int
    seed: int
    trials: int
    leaf_solver: AlgorithmTag
    variables: dict[str, VariableStats] = field(default_factory=dict)
    trees: dict[int, HeightSummary] = field(default_factory=dict)
    wall_time: float = 0.0

    def stats(self, name: str) -> VariableStats:
        return self.variables[name]

    @property
    def ratio_violations(self) -> int:
        return sum(tree.ratio_violations for tree in self.trees.values())

    def to_record(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "seed": self.seed,
            "trials": self.trials,
            "leaf_solver": str(self.leaf_solver),
            "wall_time": self.wall_time,
            "variables": {
                name: {
                    "mean": stats.mean,
                    "variance": stats.variance,
                    "half_width": stats.half_width,
                }
                for name, stats in self.variables.items()
            },
            "trees": {
                str(height): {
                    "nodes": tree.nodes,
                    "gate_stops": tree.gate_stops,
                    "ratio_violations": tree.ratio_violations,
                    "gate_failed_below_half": tree.gate_failed_below_half,
                    "ratio_of_means": tree.ratio_of_means,
                    "mean_of_ratios": tree.mean_of_ratios,
                }
                for height, tree in self.trees.items()
            },
        }


def _height_summary(height: int, columns: dict[str, np.ndarray]) -> HeightSummary:
    """Forced-tree ratios; only roots passing the gate count as violations."""
    ratios = columns[tree_key(height, "leaf")] / columns["Z_opt"]
    below_half = ratios < 0.5 - 1e-12
    gated_root = columns["root_gate"] > 0.5
    summary = HeightSummary(
        height=height,
        nodes=2 ** (height + 1) - 1,
        gate_stops=int(np.sum(columns[tree_key(height, "gate_stops")])),
        ratio_violations=int(np.count_nonzero(below_half & gated_root)),
        gate_failed_below_half=int(np.count_nonzero(below_half & ~gated_root)),
    )
    for name, (suffix, denominator) in TREE_RATIOS.items():
        numerator = columns[tree_key(height, suffix)]
        whole = columns[denominator]
        summary.ratio_of_means[name] = 100 * float(np.mean(numerator) / np.mean(whole))
        summary.mean_of_ratios[name] = 100 * float(np.mean(numerator / whole))
    return summary


def summarize(
    delta: int,
    seed: int,
    leaf_solver: AlgorithmTag,
    heights: Iterable[int],
    records: list[dict[str, float]],
    z: float = CONFIDENCE_Z,
) -> EmpiricalSummary:
    """Reduce trial records, already in trial order, to statistics."""
    names = list(records[0])
    columns = {
        name: np.array([record[name] for record in records], dtype=float)
        for name in names
    }
    summary = EmpiricalSummary(delta, seed, len(records), leaf_solver)
    for name in names:
        if not name.endswith("_gate_stops"):
            summary.variables[name] = VariableStats.of(name, columns[name], z)
    for height in heights:
        summary.trees[height] = _height_summary(height, columns)
    return summary


def run_campaign(
    delta: int,
    seed: int = DEFAULT_SEED,
    heights: Iterable[int] = (1, 2, 3, 4),
    leaf_solver: AlgorithmTag = AlgorithmTag.DYNAMIC_PROGRAM,
    trials: Optional[int] = None,
    workers: int = WORKERS,
    min_size: int = MIN_SUBPROBLEM_SIZE,
) -> EmpiricalSummary:
    """Sample, solve and reduce one campaign; trials default to plan_trials."""
    heights = tuple(sorted(set(heights)))
    if any(height < 0 for height in heights):
        raise ValueError(f"Tree heights must be non-negative, got {heights}")
    if delta % 2 == 0 and any(height > 0 for height in heights):
        raise OddItemCount(delta)
    count = trials if trials is not None else plan_trials(delta).trials
    if count < 1:
        raise ValueError(f"A campaign needs at least one trial, got {count}")
    tasks = [
        TrialTask(delta, seed, trial, heights, leaf_solver, min_size)
        for trial in range(1, count + 1)
    ]
    logger.info(
        f"Campaign delta={delta}: {count} trials, heights {list(heights)}, "
        f"{workers} worker(s)"
    )
    start_time = time.time()
    if workers <= 1:
        records = [run_trial(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(run_trial, tasks, chunksize=16))
    summary = summarize(delta, seed, leaf_solver, heights, records)
    summary.wall_time = time.time() - start_time
    for height, tree in summary.trees.items():
        if tree.ratio_violations:
            logger.error(
                f"Height {height}: {tree.ratio_violations} gate-passed trial(s) "
                f"with z*_T / z* < 1/2"
            )
        if tree.gate_failed_below_half:
            logger.warning(
                f"Height {height}: {tree.gate_failed_below_half} trial(s) below 1/2 "
                f"on roots failing the greedy gate"
            )
        logger.info(
            f"Height {height}: rho={tree.ratio_of_means['rho']:.2f} forced, "
            f"{tree.ratio_of_means['rho_gated']:.2f} gated, "
            f"gate stops {tree.gate_stops}"
        )
    logger.info(f"Campaign delta={delta} finished in {summary.wall_time:.2f} s")
    return summary


@dataclass(frozen=True)
class Verdict:
    variable: str
    analytic: float
    empirical: float
    half_width: float
    inside: bool
    level: str

    @property
    def failed(self) -> bool:
        return self.level == "gate" and not self.inside

    def to_record(self) -> dict[str, Any]:
        return {
            "variable": self.variable,
            "analytic": self.analytic,
            "empirical": self.empirical,
            "half_width": self.half_width,
            "inside": self.inside,
            "level": self.level,
        }


def compare(report: ExpectationReport, summary: EmpiricalSummary) -> list[Verdict]:
    """Analytic values against empirical confidence intervals.

    Unconditional closed forms are gates; approximations only warn. The
    eligible-first gate uses the integer-weight gain, which is what the
    simulation measures; the k/2 model is listed as a warning row.
    """
    if report.delta != summary.delta:
        raise ValueError(
            f"Report delta {report.delta} differs from campaign delta {summary.delta}"
        )
    exact_ef = float(ef_mean_exact(report.delta, FormulaVariant.EXACT, exact=False))
    rows: list[tuple[str, str, Optional[float], str]] = [
        ("S", "E S", report.e_split, "gate"),
        ("K", "E K", report.e_slack, "gate"),
        ("Z_gr", "E Z^gr", report.e_greedy, "gate"),
        ("Z_lp", "E Z^lp", report.e_lp, "gate"),
        ("Z_ef", "E Z^ef", exact_ef, "gate"),
        ("C_lt", "E C_lt", report.e_cap_left, "gate"),
        ("C_rt", "E C_rt", report.e_cap_right, "gate"),
        ("Z_ef", "approx Z^ef", report.ef_approx, "warn"),
        ("S_lt", "approx S_lt", report.e_split_left, "warn"),
        ("S_rt", "approx S_rt", report.e_split_right, "warn"),
        ("K_lt", "approx K_lt", report.e_slack_left, "warn"),
        ("K_rt", "approx K_rt", report.e_slack_right, "warn"),
        ("Z_gr_lt", "approx Z^gr_lt", report.e_greedy_left, "warn"),
        ("Z_gr_rt", "approx Z^gr_rt", report.e_greedy_right, "warn"),
        ("Z_ef_lt", "approx Z^ef_lt", report.ef_left, "warn"),
        ("Z_ef_rt", "approx Z^ef_rt", report.ef_right, "warn"),
    ]
    if report.variant is not FormulaVariant.EXACT:
        rows.append(("Z_ef", f"E Z^ef ({report.variant})", report.e_ef_exact, "warn"))

    verdicts = []
    for variable, label, analytic, level in rows:
        if analytic is None or variable not in summary.variables:
            continue
        stats = summary.variables[variable]
        verdict = Verdict(
            label,
            float(analytic),
            stats.mean,
            stats.half_width,
            stats.contains(float(analytic)),
            level,
        )
        if not verdict.inside:
            log = logger.error if level == "gate" else logger.warning
            log(
                f"{label} = {verdict.analytic:.4f} outside "
                f"{stats.mean:.4f} +- {stats.half_width:.4f}"
            )
        verdicts.append(verdict)
    return verdicts


def verdicts_pass(verdicts: Iterable[Verdict]) -> bool:
    return not any(verdict.failed for verdict in verdicts)
