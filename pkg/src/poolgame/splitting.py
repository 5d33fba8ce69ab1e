"""In-pool reward splitting strategies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


@dataclass(frozen=True)
class FairShare:
    """Every member receives profit in proportion to its measure within the pool."""


@dataclass(frozen=True)
class OperatorMargin:
    """The operator takes ``margin`` of the profit first; the rest is split fair-share."""

    operator: int
    margin: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "margin", Fraction(self.margin))
        if not 0 <= self.margin <= 1:
            raise InputError(f"operator margin {self.margin} outside [0, 1]")


SplittingStrategy = FairShare | OperatorMargin
