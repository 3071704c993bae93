"""benchmark.py - A module for benchmarking the dynamic program and campaigns.
Author: Dana Whitlock
Date: 2025-06-11
"""

import time

from knapsack_dnc.analytics import ef_gain_exact
from knapsack_dnc.common.data_types import AlgorithmTag
from knapsack_dnc.common.logger import logger
from knapsack_dnc.core import dp_optimal
from knapsack_dnc.randmodel import ModelParams, sample_stream
from knapsack_dnc.simulator import TrialTask, run_trial

BENCHMARK_SEED = 7
DP_DELTA = 1023
CAMPAIGN_DELTA = 63
EF_DELTA = 500


def _timed(label: str, runs: int, work) -> float:
    logger.disabled = True
    start_time = time.time()
    for run in range(runs):
        work(run)
    end_time = time.time()
    logger.disabled = False
    execution_time = end_time - start_time
    logger.info(f"{label}: {execution_time:.2f} seconds for {runs} runs.")
    logger.info(f"{label}: {execution_time / runs * 1000:.2f} ms per run.")
    return execution_time


def benchmark_dynamic_program():
    instances = [
        sample.instance
        for sample in sample_stream(ModelParams(DP_DELTA, BENCHMARK_SEED), 20)
    ]
    execution_time = _timed(
        f"DP delta={DP_DELTA}", len(instances), lambda run: dp_optimal(instances[run])
    )
    cells = sum(len(instance) * (instance.capacity + 1) for instance in instances)
    logger.info(f"DP table cells per second: {cells / execution_time:.0f}.")


def benchmark_campaign_trials():
    def work(run: int):
        run_trial(
            TrialTask(
                CAMPAIGN_DELTA,
                BENCHMARK_SEED,
                run + 1,
                (1, 2, 3, 4),
                AlgorithmTag.DYNAMIC_PROGRAM,
                2,
            )
        )

    _timed(f"Campaign trial delta={CAMPAIGN_DELTA}", 100, work)


def benchmark_ef_double_sum():
    _timed(f"E Y^ef double sum delta={EF_DELTA}", 10, lambda run: ef_gain_exact(EF_DELTA))


def main():
    logger.info("Starting benchmark...")
    benchmark_dynamic_program()
    benchmark_campaign_trials()
    benchmark_ef_double_sum()


if __name__ == "__main__":
    main()
