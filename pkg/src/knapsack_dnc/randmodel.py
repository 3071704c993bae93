"""randmodel.py - Random 0-1 knapsack instances with suffix-sum efficiencies
Author: Dana Whitlock
Date: 2025-06-04

Model: mu = delta + 1 items, weights uniform on the integers 1..delta,
increments T(i) uniform on [0, 1), efficiencies g(i) = T(i) + ... + T(mu) and
profits p(i) = g(i) * w(i).

Reproducibility: trial t of a stream draws from
``SeedSequence(entropy=seed, spawn_key=(t,))`` fed to numpy's default PCG64
generator, so every trial depends only on (seed, t).
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional

import numpy as np

from knapsack_dnc.common.config import DEFAULT_SEED
from knapsack_dnc.common.data_types import Instance
from knapsack_dnc.core import dump_instance, validate

SEED_LIMIT = 2**64
EXHAUSTIVE_MAX_DELTA = 5


@dataclass(frozen=True)
class ModelParams:
    delta: int
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError(f"Capacity must be at least 1, got {self.delta}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ValueError(f"Seed {self.seed} is not a 64-bit unsigned integer")

    @property
    def mu(self) -> int:
        return self.delta + 1


@dataclass(frozen=True)
class RandomInstance:
    instance: Instance
    increments: tuple[float, ...]

    @property
    def efficiencies(self) -> tuple[float, ...]:
        return tuple(np.cumsum(self.increments[::-1])[::-1].tolist())

    def to_json(self) -> str:
        return dump_instance(self.instance, self.increments)


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial; a pure function of (seed, trial)."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    )


def sample(
    params: ModelParams, rng: Optional[np.random.Generator] = None
) -> RandomInstance:
    """Draw one instance; without a generator the seed alone decides it."""
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=params.seed))
    weights = rng.integers(1, params.delta, endpoint=True, size=params.mu)
    increments = rng.random(params.mu)
    efficiencies = np.cumsum(increments[::-1])[::-1]
    profits = efficiencies * weights
    instance = validate(
        Instance(params.delta, tuple(weights.tolist()), tuple(profits.tolist()))
    )
    return RandomInstance(instance, tuple(increments.tolist()))


def sample_trial(params: ModelParams, trial: int) -> RandomInstance:
    return sample(params, trial_generator(params.seed, trial))


def sample_stream(
    params: ModelParams, count: int, first_trial: int = 1
) -> Iterator[RandomInstance]:
    """Trials first_trial .. first_trial + count - 1, each independently seeded."""
    if count < 1:
        raise ValueError(f"Stream length must be positive, got {count}")
    return (
        sample_trial(params, trial)
        for trial in range(first_trial, first_trial + count)
    )


@dataclass
class ExhaustiveLaws:
    """Exact laws of the weight-only variables over every weight tuple."""

    delta: int
    p_split: dict[int, Fraction] = field(default_factory=dict)
    p_slack: dict[int, Fraction] = field(default_factory=dict)
    joint: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    e_weight_given_split: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    e_slack_given_split: dict[int, Fraction] = field(default_factory=dict)
    e_cap_left: Optional[Fraction] = None
    e_cap_right: Optional[Fraction] = None


def exhaustive_laws(delta: int, max_delta: int = EXHAUSTIVE_MAX_DELTA) -> ExhaustiveLaws:
    """Enumerate all delta^(delta+1) weight tuples with rational weights.

    Efficiencies do not influence the split, the slack or the pair
    capacities, so the weights alone determine these laws.
    """
    if not 1 <= delta <= max_delta:
        raise ValueError(f"Exhaustive enumeration needs 1 <= delta <= {max_delta}")
    mu = delta + 1
    unit = Fraction(1, delta**mu)
    joint: Counter[tuple[int, int]] = Counter()
    weight_totals: Counter[tuple[int, int]] = Counter()
    left_total = 0
    for weights in product(range(1, delta + 1), repeat=mu):
        packed = 0
        used = 0
        while packed < mu and used + weights[packed] <= delta:
            used += weights[packed]
            packed += 1
        split = packed + 1
        slack = delta - used
        joint[(slack, split)] += 1
        for position in range(packed):
            weight_totals[(position + 1, split)] += weights[position]
        left_total += sum(weights[0:packed:2]) + (slack + 1) // 2

    laws = ExhaustiveLaws(delta)
    laws.joint = {key: count * unit for key, count in sorted(joint.items())}
    for (slack, split), p in laws.joint.items():
        laws.p_split[split] = laws.p_split.get(split, Fraction(0)) + p
        laws.p_slack[slack] = laws.p_slack.get(slack, Fraction(0)) + p
    for split, p in laws.p_split.items():
        laws.e_slack_given_split[split] = (
            sum(
                (slack * q for (slack, s), q in laws.joint.items() if s == split),
                Fraction(0),
            )
            / p
        )
    # E(W(j) | S = s) for every packed position j < s
    laws.e_weight_given_split = {
        (position, split): total * unit / laws.p_split[split]
        for (position, split), total in sorted(weight_totals.items())
    }
    laws.p_split = dict(sorted(laws.p_split.items()))
    laws.p_slack = dict(sorted(laws.p_slack.items()))
    if delta % 2 == 1:
        laws.e_cap_left = left_total * unit
        laws.e_cap_right = delta - laws.e_cap_left
    return laws
