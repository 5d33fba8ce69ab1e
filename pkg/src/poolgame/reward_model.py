"""Reward functions of measure, the reward axioms, and in-pool splitting.

Every family is defined on measure alone, so two owner sets with equal
measure always earn equal rewards.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable

from .cost_model import DEFAULT_PAIR_BOUND, CostModel, cost
from .errors import EmptyPool, InputError, MeasureOutOfRange, NotOnGrid, SubsetLimitExceeded
from .rational import to_fraction
from .resource_model import ResourceUniverse, check_owners
from .splitting import FairShare, OperatorMargin, SplittingStrategy

__all__ = [
    "Linear",
    "Capped",
    "PowerConvex",
    "Tabulated",
    "RewardModel",
    "Axiom",
    "AxiomWitness",
    "CauchyWitness",
    "evaluate",
    "check_sybil_resilience",
    "check_egalitarianism",
    "check_cauchy_linearity",
    "split_profit",
    "split_rewards",
    "FairShare",
    "OperatorMargin",
    "SplittingStrategy",
]


def _nonneg(name: str, value) -> Fraction:
    value = to_fraction(value)
    if value < 0:
        raise InputError(f"{name} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class Linear:
    gamma: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", _nonneg("gamma", self.gamma))


@dataclass(frozen=True)
class Capped:
    """Linear up to measure ``beta``, flat afterwards."""

    gamma: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", _nonneg("gamma", self.gamma))
        beta = to_fraction(self.beta)
        if not 0 < beta <= 1:
            raise InputError(f"cap beta must lie in (0, 1], got {beta}")
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class PowerConvex:
    gamma: Fraction
    exponent: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", _nonneg("gamma", self.gamma))
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 2:
            raise InputError(f"exponent must be an integer >= 2, got {self.exponent!r}")


@dataclass(frozen=True)
class Tabulated:
    """Reward values at explicit grid measures; undefined between grid points."""

    grid: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        grid = tuple((to_fraction(m), to_fraction(v)) for m, v in self.grid)
        if not grid or grid[0] != (0, 0):
            raise InputError("tabulated grid must start at (0, 0)")
        for (m0, _), (m1, _) in zip(grid, grid[1:]):
            if m1 <= m0:
                raise InputError("tabulated grid measures must be strictly increasing")
        if grid[-1][0] > 1:
            raise InputError("tabulated grid measures must lie in [0, 1]")
        object.__setattr__(self, "grid", grid)

    def lookup(self) -> dict[Fraction, Fraction]:
        return dict(self.grid)


RewardModel = Linear | Capped | PowerConvex | Tabulated


def evaluate(model: RewardModel, x) -> Fraction:
    """Reward earned by a pool of measure ``x``."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise MeasureOutOfRange(x)
    if isinstance(model, Linear):
        return model.gamma * x
    if isinstance(model, Capped):
        return model.gamma * min(x, model.beta)
    if isinstance(model, PowerConvex):
        return model.gamma * x**model.exponent
    if isinstance(model, Tabulated):
        for m, v in model.grid:
            if m == x:
                return v
        raise NotOnGrid(x)
    raise TypeError(f"unknown reward model {model!r}")


class Axiom(str, Enum):
    SYBIL_RESILIENCE = "sybil_resilience"
    EGALITARIANISM = "egalitarianism"


@dataclass(frozen=True)
class AxiomWitness:
    """A violated axiom instance.

    ``sets`` holds the two disjoint owner joins; ``measures`` their measures
    (for egalitarianism, prefixed with the combined measure that the richer
    pool would hold). ``lhs`` is the reward of the combined measure and
    ``rhs`` the sum of the separate rewards.
    """

    axiom: Axiom
    sets: tuple[frozenset[int], ...]
    measures: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction


def _disjoint_measure_pairs(u: ResourceUniverse, max_owners: int):
    """Every achievable (measure(A), measure(B)) for disjoint A, B with a representative.

    The representative for each measure pair minimizes
    ``(|A|+|B|, |A|, A, B)``; appending a larger owner preserves that order,
    so the minimum survives the dynamic program.
    """
    if u.n > max_owners:
        raise SubsetLimitExceeded(u.n, max_owners)
    D = lcm(*(w.denominator for w in u.weights))
    ints = [int(w * D) for w in u.weights]
    states: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]] = {(0, 0): ((), ())}

    def key(rep):
        a, b = rep
        return (len(a) + len(b), len(a), a, b)

    for i, w in enumerate(ints):
        nxt = dict(states)
        for (a, b), (s1, s2) in states.items():
            for pair, rep in (((a + w, b), (s1 + (i,), s2)), ((a, b + w), (s1, s2 + (i,)))):
                cur = nxt.get(pair)
                if cur is None or key(rep) < key(cur):
                    nxt[pair] = rep
        states = nxt
    return D, states


def _check_additivity(model: RewardModel, u: ResourceUniverse, axiom: Axiom, max_owners: int):
    D, states = _disjoint_measure_pairs(u, max_owners)
    values: dict[int, Fraction] = {}

    def rho(m: int) -> Fraction:
        if m not in values:
            values[m] = evaluate(model, Fraction(m, D))
        return values[m]

    best = None
    for (a, b), (s1, s2) in states.items():
        if not s1 or not s2:
            continue
        lhs, rhs = rho(a + b), rho(a) + rho(b)
        violated = lhs < rhs if axiom is Axiom.SYBIL_RESILIENCE else lhs > rhs
        if not violated:
            continue
        k = (len(s1) + len(s2), len(s1), s1, s2)
        if best is None or k < best[0]:
            best = (k, a, b, lhs, rhs)
    if best is None:
        return None
    (_, _, s1, s2), a, b, lhs, rhs = best
    measures = (Fraction(a, D), Fraction(b, D))
    if axiom is Axiom.EGALITARIANISM:
        measures = (Fraction(a + b, D),) + measures
    return AxiomWitness(axiom, (frozenset(s1), frozenset(s2)), measures, lhs, rhs)


def check_sybil_resilience(
    model: RewardModel, u: ResourceUniverse, max_owners: int = DEFAULT_PAIR_BOUND
) -> AxiomWitness | None:
    """Superadditivity over disjoint owner joins; ``None`` means the axiom holds."""
    return _check_additivity(model, u, Axiom.SYBIL_RESILIENCE, max_owners)


def check_egalitarianism(
    model: RewardModel, u: ResourceUniverse, max_owners: int = DEFAULT_PAIR_BOUND
) -> AxiomWitness | None:
    """Subadditivity over disjoint owner joins; ``None`` means the axiom holds.

    Rewards depend on measure only, so a rich pool of the combined measure
    is compared against the two poorer pools without requiring a third
    disjoint join of that measure to exist in ``u``.
    """
    return _check_additivity(model, u, Axiom.EGALITARIANISM, max_owners)


@dataclass(frozen=True)
class CauchyWitness:
    k: int
    denominator: int
    value: Fraction
    expected: Fraction


def check_cauchy_linearity(model: RewardModel, denominator: int) -> CauchyWitness | None:
    """Check ``rho(k/N) == k * rho(1/N)`` for ``k = 0..N``; return the first failure."""
    if denominator < 1:
        raise InputError("denominator must be >= 1")
    unit = evaluate(model, Fraction(1, denominator))
    for k in range(denominator + 1):
        value = evaluate(model, Fraction(k, denominator))
        if value != k * unit:
            return CauchyWitness(k, denominator, value, k * unit)
    return None


def split_profit(
    pool: Iterable[int], strategy: SplittingStrategy, u: ResourceUniverse, profit
) -> dict[int, Fraction]:
    """Distribute ``profit`` (possibly negative) among pool members; shares sum to it exactly."""
    pool = check_owners(u, pool)
    if not pool:
        raise EmptyPool(0)
    profit = Fraction(profit)
    total = u.measure(pool)
    operator_cut = Fraction(0)
    if isinstance(strategy, OperatorMargin):
        if strategy.operator not in pool:
            raise InputError(f"operator {strategy.operator} is not a member of the pool")
        operator_cut = strategy.margin * profit
    rest = profit - operator_cut
    shares = {i: u.weights[i] / total * rest for i in sorted(pool)}
    if operator_cut:
        shares[strategy.operator] += operator_cut
    return shares


def split_rewards(
    pool: Iterable[int],
    strategy: SplittingStrategy,
    u: ResourceUniverse,
    cost_model: CostModel,
    reward: RewardModel,
) -> dict[int, Fraction]:
    pool = check_owners(u, pool)
    if not pool:
        raise EmptyPool(0)
    profit = evaluate(reward, u.measure(pool)) - cost(cost_model, u, pool)
    return split_profit(pool, strategy, u, profit)
