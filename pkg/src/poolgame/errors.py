"""Exception types raised across the package.

Each error carries the offending values as attributes so callers (and the
CLI) can report them without parsing messages.
"""

from __future__ import annotations


class PoolGameError(Exception):
    """Base class for all package errors."""


class InputError(PoolGameError, ValueError):
    """Invalid model or scenario input. The CLI maps these to exit code 2."""


class LimitError(PoolGameError):
    """An exhaustive enumeration would exceed its configured bound (exit code 3)."""


class NonPositiveWeight(InputError):
    def __init__(self, owner: int, weight) -> None:
        super().__init__(f"owner {owner} has non-positive weight {weight}")
        self.owner = owner
        self.weight = weight


class WeightsDoNotSumToOne(InputError):
    def __init__(self, total) -> None:
        super().__init__(f"weights sum to {total}, expected exactly 1")
        self.total = total


class UnknownOwner(InputError):
    def __init__(self, owner) -> None:
        super().__init__(f"unknown owner {owner!r}")
        self.owner = owner


class OverlappingPools(InputError):
    def __init__(self, owner: int, pool_a: int, pool_b: int) -> None:
        super().__init__(f"owner {owner} belongs to pools {pool_a} and {pool_b}")
        self.owner = owner
        self.pool_a = pool_a
        self.pool_b = pool_b


class EmptyPool(InputError):
    def __init__(self, index: int) -> None:
        super().__init__(f"pool {index} is empty")
        self.index = index


class EmptySet(InputError):
    def __init__(self) -> None:
        super().__init__("cost is undefined on the empty set")


class UndefinedCost(InputError):
    def __init__(self, owners) -> None:
        super().__init__(f"no cost defined for owner set {sorted(owners)}")
        self.owners = owners


class MeasureOutOfRange(InputError):
    def __init__(self, x) -> None:
        super().__init__(f"measure {x} outside [0, 1]")
        self.x = x


class NotOnGrid(InputError):
    def __init__(self, x) -> None:
        super().__init__(f"measure {x} is not a grid point of the tabulated reward")
        self.x = x


class RateOutOfRange(InputError):
    def __init__(self, rate) -> None:
        super().__init__(f"rate {rate} outside [0, 1]")
        self.rate = rate


class EpochOutOfCustomRange(InputError):
    def __init__(self, epoch: int) -> None:
        super().__init__(f"epoch {epoch} not covered by the custom schedule")
        self.epoch = epoch


class KTooLarge(InputError):
    def __init__(self, k: int, available: int) -> None:
        super().__init__(f"committee size {k} exceeds {available} pools with positive stake")
        self.k = k
        self.available = available


class SubsetLimitExceeded(LimitError):
    def __init__(self, size: int, bound: int) -> None:
        super().__init__(f"{size} owners exceeds the subset enumeration bound {bound}")
        self.size = size
        self.bound = bound


class EnumerationLimitExceeded(LimitError):
    def __init__(self, size: int, bound: int) -> None:
        super().__init__(f"{size} owners exceeds the coalition enumeration bound {bound}")
        self.size = size
        self.bound = bound
