"""Epoch simulator for a stake-based service: weighted committee sampling and reward payout.

Committee selection uses weighted sampling without replacement by
exponential keys: every pool with stake ``w > 0`` draws ``u`` uniform on
``(0, 1]`` and gets key ``u ** (1 / w)`` (compared as ``log(u) / w``); the
``k`` largest keys form the committee. Uniforms come from Python's
``random.Random`` (MT19937) seeded with an integer, one draw per stake
entry in input order, zero-stake entries included. Epoch ``e`` of a run
with seed ``s`` uses ``(s << 32) | e``.

Floats appear only in the keys. All accounting is exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cost_model import cost
from .equilibrium import Instance
from .errors import InputError, KTooLarge
from .rational import to_fraction
from .resource_model import PoolingConfiguration, validate_configuration
from .reward_model import split_profit
from .tokenomics import EmissionSchedule, EpochPot, emission, epoch_pot


def select_committee(stakes: Sequence[tuple[int, Fraction]], k: int, seed: int) -> list[int]:
    """Pick ``k`` pool indices with probability driven by stake; ordered by decreasing key."""
    rng = random.Random(seed)
    keyed = []
    for index, weight in stakes:
        u = 1.0 - rng.random()
        if weight > 0:
            keyed.append((math.log(u) / float(weight), -index, index))
    if k < 0:
        raise InputError("committee size must be nonnegative")
    if k > len(keyed):
        raise KTooLarge(k, len(keyed))
    keyed.sort(reverse=True)
    return [index for _, _, index in keyed[:k]]


def epoch_seed(seed: int, epoch: int) -> int:
    return (seed << 32) | epoch


@dataclass(frozen=True)
class Scenario:
    instance: Instance
    configuration: PoolingConfiguration
    k: int
    epochs: int
    schedule: EmissionSchedule
    treasury_rate: Fraction = Fraction(0)
    fees_per_epoch: Fraction = Fraction(0)
    performance: Mapping[int, Fraction] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "treasury_rate", to_fraction(self.treasury_rate))
        object.__setattr__(self, "fees_per_epoch", to_fraction(self.fees_per_epoch))
        perf = {int(p): to_fraction(f) for p, f in dict(self.performance).items()}
        object.__setattr__(self, "performance", perf)
        validate_configuration(self.instance.universe, self.configuration)
        pools = len(self.configuration.pools)
        if not 1 <= self.k <= pools:
            raise InputError(f"committee size {self.k} must lie in [1, {pools}]")
        if self.epochs < 0:
            raise InputError("epochs must be nonnegative")
        for p, f in perf.items():
            if not 0 <= p < pools:
                raise InputError(f"performance given for unknown pool {p}")
            if not 0 <= f <= 1:
                raise InputError(f"performance factor {f} of pool {p} outside [0, 1]")

    def factor(self, pool: int) -> Fraction:
        return self.performance.get(pool, Fraction(1))

    def stakes(self) -> list[tuple[int, Fraction]]:
        u = self.instance.universe
        return [(i, u.measure(p)) for i, p in enumerate(self.configuration.pools)]


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    committee: tuple[int, ...]
    pot: EpochPot
    pool_rewards: dict[int, Fraction]
    owner_rewards: dict[int, Fraction]
    shortfall: Fraction

    @property
    def treasury(self) -> Fraction:
        """Treasury intake: the tax plus whatever performance shortfalls left undistributed."""
        return self.pot.treasury_cut + self.shortfall


def distribute_epoch(scenario: Scenario, epoch: int, committee: Sequence[int]) -> EpochRecord:
    """Pay committee pools in proportion to stake, scaled by performance.

    Each pool's reward minus its cost is split among members by the pool's
    splitting strategy. Pools outside the committee earn nothing.
    """
    u = scenario.instance.universe
    cfg = scenario.configuration
    committee = tuple(committee)
    if len(set(committee)) != len(committee) or any(not 0 <= p < len(cfg.pools) for p in committee):
        raise InputError(f"invalid committee {committee}")
    pot = epoch_pot(emission(scenario.schedule, epoch), scenario.fees_per_epoch, scenario.treasury_rate)
    stake_total = sum((u.measure(cfg.pools[p]) for p in committee), Fraction(0))

    pool_rewards: dict[int, Fraction] = {}
    owner_rewards = {i: Fraction(0) for i in u.owners}
    shortfall = Fraction(0)
    for p in committee:
        pool = cfg.pools[p]
        baseline = pot.distributable * u.measure(pool) / stake_total
        reward = baseline * scenario.factor(p)
        shortfall += baseline - reward
        pool_rewards[p] = reward
        profit = reward - cost(scenario.instance.cost, u, pool)
        owner_rewards.update(split_profit(pool, cfg.splitting[p], u, profit))
    return EpochRecord(epoch, committee, pot, pool_rewards, owner_rewards, shortfall)


def run(scenario: Scenario) -> list[EpochRecord]:
    records = []
    stakes = scenario.stakes()
    for epoch in range(scenario.epochs):
        committee = select_committee(stakes, scenario.k, epoch_seed(scenario.seed, epoch))
        records.append(distribute_epoch(scenario, epoch, committee))
    return records


def cumulative_owner_rewards(records: Sequence[EpochRecord], n: int) -> dict[int, Fraction]:
    totals = {i: Fraction(0) for i in range(n)}
    for record in records:
        for owner, amount in record.owner_rewards.items():
            totals[owner] += amount
    return totals
