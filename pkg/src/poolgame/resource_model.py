"""Resource universe at owner granularity, its measure, and pooling configurations.

Owners are identified by their index ``0..n-1``. Sets of owners (pools,
coalitions, subsets) are plain ``frozenset[int]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    EmptyPool,
    NonPositiveWeight,
    OverlappingPools,
    UnknownOwner,
    WeightsDoNotSumToOne,
)
from .rational import to_fraction
from .splitting import FairShare, OperatorMargin, SplittingStrategy

OwnerSet = frozenset


@dataclass(frozen=True)
class ResourceUniverse:
    """Normalized owner weights; ``weights[i]`` is the measure of owner ``i``."""

    weights: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def owners(self) -> range:
        return range(len(self.weights))

    @property
    def everyone(self) -> frozenset[int]:
        return frozenset(self.owners)

    def measure(self, owners: Iterable[int]) -> Fraction:
        return measure(self, owners)


def new_universe(weights: Sequence) -> ResourceUniverse:
    """Build a universe from positive rational weights that sum to exactly 1.

    No normalization is applied.

    >>> new_universe(["1/2", "1/3", "1/6"]).n
    3
    """
    fracs = tuple(to_fraction(w) for w in weights)
    if not fracs:
        raise WeightsDoNotSumToOne(Fraction(0))
    for i, w in enumerate(fracs):
        if w <= 0:
            raise NonPositiveWeight(i, w)
    total = sum(fracs, Fraction(0))
    if total != 1:
        raise WeightsDoNotSumToOne(total)
    return ResourceUniverse(fracs)


def uniform_universe(n: int) -> ResourceUniverse:
    return new_universe([Fraction(1, n)] * n)


def check_owners(u: ResourceUniverse, owners: Iterable[int]) -> frozenset[int]:
    s = frozenset(owners)
    for i in s:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < u.n:
            raise UnknownOwner(i)
    return s


def measure(u: ResourceUniverse, owners: Iterable[int]) -> Fraction:
    s = check_owners(u, owners)
    return sum((u.weights[i] for i in s), Fraction(0))


@dataclass(frozen=True)
class PoolingConfiguration:
    """Disjoint pools with one splitting strategy per pool.

    Owners that appear in no pool are inactive. ``splitting`` defaults to
    fair share for every pool.
    """

    pools: tuple[frozenset[int], ...]
    splitting: tuple[SplittingStrategy, ...] = field(default=())

    def __post_init__(self) -> None:
        pools = tuple(frozenset(p) for p in self.pools)
        object.__setattr__(self, "pools", pools)
        splitting = tuple(self.splitting) or tuple(FairShare() for _ in pools)
        if len(splitting) != len(pools):
            raise ValueError("need exactly one splitting strategy per pool")
        object.__setattr__(self, "splitting", splitting)

    @classmethod
    def centralized(cls, u: ResourceUniverse) -> PoolingConfiguration:
        return cls((u.everyone,))

    @classmethod
    def solo(cls, u: ResourceUniverse) -> PoolingConfiguration:
        return cls(tuple(frozenset([i]) for i in u.owners))

    def pool_of(self, owner: int) -> int | None:
        for index, pool in enumerate(self.pools):
            if owner in pool:
                return index
        return None

    def active(self) -> frozenset[int]:
        return frozenset().union(*self.pools)


def validate_configuration(u: ResourceUniverse, cfg: PoolingConfiguration) -> None:
    """Raise if pools are empty, overlap, reference unknown owners, or carry a bad operator."""
    seen: dict[int, int] = {}
    for index, pool in enumerate(cfg.pools):
        if not pool:
            raise EmptyPool(index)
        check_owners(u, pool)
        for owner in sorted(pool):
            if owner in seen:
                raise OverlappingPools(owner, seen[owner], index)
            seen[owner] = index
    for index, (pool, strategy) in enumerate(zip(cfg.pools, cfg.splitting)):
        if isinstance(strategy, OperatorMargin) and strategy.operator not in pool:
            raise UnknownOwner(strategy.operator)
