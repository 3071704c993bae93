"""instances.py - Hand-checked knapsack instances and a brute-force optimum
Author: Dana Whitlock
Date: 2025-06-12
"""

import math
from itertools import product

from knapsack_dnc.common.data_types import Problem, as_subproblem

EXAMPLE_CAPACITY = 7
EXAMPLE_WEIGHTS = [3, 2, 3, 3, 4, 7, 1, 5]
EXAMPLE_PROFITS = [11.7, 7.0, 9.3, 8.4, 8.4, 9.1, 0.7, 1.0]

# Values implied by the data above
EXAMPLE_SPLIT = 3
EXAMPLE_SLACK = 2
EXAMPLE_Z_GR = 18.7
EXAMPLE_Z_EG = 18.7
EXAMPLE_Z_EF = 19.4
EXAMPLE_Z_FG = 19.4
EXAMPLE_Z_LP = 24.9
EXAMPLE_Z_OPT = 21.7
EXAMPLE_X_OPT = (1, 0, 1, 0, 0, 0, 1, 0)
EXAMPLE_Z_TREE = 20.1

EXAMPLE_YAML = """\
capacity: 7
weights: [3, 2, 3, 3, 4, 7, 1, 5]
profits: [11.7, 7.0, 9.3, 8.4, 8.4, 9.1, 0.7, 1.0]
"""


def brute_force_optimum(problem: Problem) -> float:
    """Best 0-1 objective over every subset; only for a handful of items."""
    subproblem = as_subproblem(problem)
    best = 0.0
    weights, profits = subproblem.weights, subproblem.profits
    for decisions in product((0, 1), repeat=len(subproblem)):
        load = sum(w for w, x in zip(weights, decisions) if x)
        if load <= subproblem.capacity:
            best = max(best, math.fsum(p for p, x in zip(profits, decisions) if x))
    return best
