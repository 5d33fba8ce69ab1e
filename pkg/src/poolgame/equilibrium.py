"""Participant utilities, Strong Nash verification and best-response dynamics.

A deviation by coalition ``C`` splits ``C`` into an inactive part (earning
zero) and new fair-share pools. Because rewards depend on a pool's own
measure only, deviators' payoffs do not depend on what the rest of the
configuration does, so the search only looks at the coalition itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .cost_model import CostModel, cost
from .enumeration import lex_subsets, set_partitions
from .errors import EnumerationLimitExceeded, InputError, UndefinedCost
from .resource_model import PoolingConfiguration, ResourceUniverse, validate_configuration
from .reward_model import RewardModel, evaluate, split_rewards
from .splitting import FairShare, OperatorMargin

DEFAULT_COALITION_BOUND = 10


@dataclass(frozen=True)
class Instance:
    universe: ResourceUniverse
    cost: CostModel
    reward: RewardModel


class ImprovementMode(str, Enum):
    ALL_STRICTLY_BETTER = "strict"
    PARETO = "pareto"


@dataclass(frozen=True)
class DeviationCertificate:
    """A coalition, the pools it forms, the members it idles, and everyone's before/after utilities."""

    coalition: frozenset[int]
    partition: tuple[frozenset[int], ...]
    inactive: frozenset[int]
    old_utilities: dict[int, Fraction]
    new_utilities: dict[int, Fraction]


@dataclass(frozen=True)
class EquilibriumReport:
    strong_nash: bool
    certificate: DeviationCertificate | None
    coalitions_checked: int
    mode: ImprovementMode

    @property
    def verdict(self) -> str:
        return "StrongNash" if self.strong_nash else "NotStrongNash"


def participant_utilities(inst: Instance, cfg: PoolingConfiguration) -> dict[int, Fraction]:
    """Each owner's share of its pool's profit; inactive owners get 0."""
    validate_configuration(inst.universe, cfg)
    utilities = {i: Fraction(0) for i in inst.universe.owners}
    for pool, strategy in zip(cfg.pools, cfg.splitting):
        utilities.update(split_rewards(pool, strategy, inst.universe, inst.cost, inst.reward))
    return utilities


def _without(pools, splitting, owners: frozenset[int]):
    """Remove ``owners`` from every pool, dropping emptied pools.

    A pool that loses its margin operator falls back to fair share.
    """
    out_pools, out_split = [], []
    for pool, strategy in zip(pools, splitting):
        rest = pool - owners
        if not rest:
            continue
        if isinstance(strategy, OperatorMargin) and strategy.operator not in rest:
            strategy = FairShare()
        out_pools.append(rest)
        out_split.append(strategy)
    return out_pools, out_split


def apply_deviation(cfg: PoolingConfiguration, cert: DeviationCertificate) -> PoolingConfiguration:
    """Configuration after the coalition leaves its pools and forms its new ones."""
    pools, splitting = _without(cfg.pools, cfg.splitting, cert.coalition)
    pools += list(cert.partition)
    splitting += [FairShare() for _ in cert.partition]
    return PoolingConfiguration(tuple(pools), tuple(splitting))


class _BlockTable:
    """Lazily evaluated fair-share utilities of every candidate block, keyed by bitmask."""

    def __init__(self, inst: Instance, old: dict[int, Fraction]) -> None:
        self.inst = inst
        self.old = old
        self._cache: dict[int, dict[int, Fraction] | None] = {}

    def utilities(self, mask: int) -> dict[int, Fraction] | None:
        if mask not in self._cache:
            u = self.inst.universe
            members = [i for i in u.owners if mask >> i & 1]
            sigma = u.measure(members)
            try:
                profit = evaluate(self.inst.reward, sigma) - cost(self.inst.cost, u, members)
            except UndefinedCost:
                self._cache[mask] = None
            else:
                self._cache[mask] = {i: u.weights[i] / sigma * profit for i in members}
        return self._cache[mask]


def _mask(owners) -> int:
    m = 0
    for i in owners:
        m |= 1 << i
    return m


def _improves(mode: ImprovementMode, old: dict[int, Fraction], new: dict[int, Fraction]) -> bool:
    if mode is ImprovementMode.ALL_STRICTLY_BETTER:
        return all(new[i] > old[i] for i in new)
    return all(new[i] >= old[i] for i in new) and any(new[i] > old[i] for i in new)


@dataclass(frozen=True)
class CoalitionOutcome:
    coalition: frozenset[int]
    deviations_checked: int
    certificate: DeviationCertificate | None


def iter_coalitions(
    inst: Instance,
    cfg: PoolingConfiguration,
    mode: ImprovementMode = ImprovementMode.ALL_STRICTLY_BETTER,
    max_owners: int = DEFAULT_COALITION_BOUND,
) -> Iterator[CoalitionOutcome]:
    """Examine every nonempty coalition in lexicographic order.

    Within a coalition, deviations are tried with no inactive members first,
    then with inactive subsets in lexicographic order; the active rest is
    partitioned in restricted-growth order. The first improving deviation
    of each coalition is reported.
    """
    mode = ImprovementMode(mode)
    u = inst.universe
    if u.n > max_owners:
        raise EnumerationLimitExceeded(u.n, max_owners)
    old = participant_utilities(inst, cfg)
    table = _BlockTable(inst, old)

    if mode is ImprovementMode.ALL_STRICTLY_BETTER:
        # blocks in which some member fails to gain strictly can never take part
        def block_admissible(new: dict[int, Fraction]) -> bool:
            return all(new[i] > old[i] for i in new)

        def idle_admissible(i: int) -> bool:
            return old[i] < 0
    else:
        def block_admissible(new: dict[int, Fraction]) -> bool:
            return all(new[i] >= old[i] for i in new)

        def idle_admissible(i: int) -> bool:
            return old[i] <= 0

    for coalition in lex_subsets(u.owners):
        checked = 0
        found = None
        for inactive in [()] + list(lex_subsets(coalition)):
            idle = frozenset(inactive)
            active = [i for i in coalition if i not in idle]
            idle_ok = all(idle_admissible(i) for i in idle)
            for partition in set_partitions(active):
                checked += 1
                if not idle_ok:
                    continue
                new: dict[int, Fraction] = {i: Fraction(0) for i in idle}
                ok = True
                for block in partition:
                    block_utils = table.utilities(_mask(block))
                    if block_utils is None or not block_admissible(block_utils):
                        ok = False
                        break
                    new.update(block_utils)
                if not ok or not _improves(mode, old, new):
                    continue
                found = DeviationCertificate(
                    coalition=frozenset(coalition),
                    partition=tuple(frozenset(b) for b in partition),
                    inactive=idle,
                    old_utilities={i: old[i] for i in coalition},
                    new_utilities=dict(sorted(new.items())),
                )
                break
            if found is not None:
                break
        yield CoalitionOutcome(frozenset(coalition), checked, found)


def find_profitable_deviation(
    inst: Instance,
    cfg: PoolingConfiguration,
    mode: ImprovementMode = ImprovementMode.ALL_STRICTLY_BETTER,
    max_owners: int = DEFAULT_COALITION_BOUND,
) -> DeviationCertificate | None:
    for outcome in iter_coalitions(inst, cfg, mode, max_owners):
        if outcome.certificate is not None:
            return outcome.certificate
    return None


def is_strong_nash(
    inst: Instance,
    cfg: PoolingConfiguration,
    mode: ImprovementMode = ImprovementMode.ALL_STRICTLY_BETTER,
    max_owners: int = DEFAULT_COALITION_BOUND,
) -> EquilibriumReport:
    mode = ImprovementMode(mode)
    checked = 0
    for outcome in iter_coalitions(inst, cfg, mode, max_owners):
        checked += 1
        if outcome.certificate is not None:
            return EquilibriumReport(False, outcome.certificate, checked, mode)
    return EquilibriumReport(True, None, checked, mode)


# --------------------------------------------------------------------------
# best-response dynamics


class MoveKind(str, Enum):
    CREATE = "create"
    JOIN = "join"
    LEAVE = "leave"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    pool: int | None = None  # index of the joined pool in the pre-move configuration

    def __str__(self) -> str:
        return f"join:{self.pool}" if self.kind is MoveKind.JOIN else self.kind.value


@dataclass(frozen=True)
class MoveRules:
    create: bool = True
    join: bool = True
    leave: bool = True


@dataclass(frozen=True)
class DynamicsStep:
    iteration: int
    mover: int
    move: Move
    configuration: PoolingConfiguration
    utility_before: Fraction
    utility_after: Fraction


@dataclass
class DynamicsTrace:
    steps: list[DynamicsStep] = field(default_factory=list)
    converged: bool = False
    iterations: int = 0
    final: PoolingConfiguration | None = None
    order: tuple[int, ...] = ()


def apply_move(cfg: PoolingConfiguration, owner: int, move: Move) -> PoolingConfiguration:
    if move.kind is MoveKind.JOIN:
        target = cfg.pools[move.pool]
        if owner in target:
            raise InputError(f"owner {owner} already belongs to pool {move.pool}")
    pools, splitting = _without(cfg.pools, cfg.splitting, frozenset([owner]))
    if move.kind is MoveKind.CREATE:
        pools.append(frozenset([owner]))
        splitting.append(FairShare())
    elif move.kind is MoveKind.JOIN:
        index = pools.index(target)
        pools[index] = target | {owner}
    return PoolingConfiguration(tuple(pools), tuple(splitting))


def _utility_of(inst: Instance, cfg: PoolingConfiguration, owner: int) -> Fraction:
    index = cfg.pool_of(owner)
    if index is None:
        return Fraction(0)
    shares = split_rewards(cfg.pools[index], cfg.splitting[index], inst.universe, inst.cost, inst.reward)
    return shares[owner]


def _candidate_moves(cfg: PoolingConfiguration, owner: int, rules: MoveRules) -> Iterator[Move]:
    """Moves in tie-breaking order: create, join by ascending pool index, leave."""
    current = cfg.pool_of(owner)
    if rules.create and (current is None or len(cfg.pools[current]) > 1):
        yield Move(MoveKind.CREATE)
    if rules.join:
        for index in range(len(cfg.pools)):
            if index != current:
                yield Move(MoveKind.JOIN, index)
    if rules.leave and current is not None:
        yield Move(MoveKind.LEAVE)


def best_response_dynamics(
    inst: Instance,
    initial: PoolingConfiguration,
    moves: MoveRules = MoveRules(),
    max_iter: int = 100,
    seed: int = 0,
) -> DynamicsTrace:
    """Round-robin best responses until a full round passes without a move.

    ``seed`` only shuffles the order in which owners are scanned. An
    iteration is one full round over all owners.
    """
    if max_iter < 1:
        raise InputError("max_iter must be >= 1")
    validate_configuration(inst.universe, initial)
    order = list(inst.universe.owners)
    random.Random(seed).shuffle(order)
    trace = DynamicsTrace(order=tuple(order))
    cfg = initial
    for iteration in range(1, max_iter + 1):
        trace.iterations = iteration
        moved = False
        for owner in order:
            before = _utility_of(inst, cfg, owner)
            best_move, best_cfg, best_value = None, None, before
            for move in _candidate_moves(cfg, owner, moves):
                candidate = apply_move(cfg, owner, move)
                try:
                    value = _utility_of(inst, candidate, owner)
                except UndefinedCost:
                    continue
                if value > best_value:
                    best_move, best_cfg, best_value = move, candidate, value
            if best_move is not None:
                cfg = best_cfg
                moved = True
                trace.steps.append(DynamicsStep(iteration, owner, best_move, cfg, before, best_value))
        if not moved:
            trace.converged = True
            break
    trace.final = cfg
    return trace
