"""Coin emission schedules and per-epoch reward pots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EpochOutOfCustomRange, InputError, RateOutOfRange
from .rational import to_fraction


@dataclass(frozen=True)
class Constant:
    rate: Fraction

    def __post_init__(self) -> None:
        rate = to_fraction(self.rate)
        if rate < 0:
            raise InputError("emission rate must be nonnegative")
        object.__setattr__(self, "rate", rate)


@dataclass(frozen=True)
class Halving:
    """``initial`` coins per epoch, halved every ``interval`` epochs."""

    initial: Fraction
    interval: int

    def __post_init__(self) -> None:
        initial = to_fraction(self.initial)
        if initial < 0:
            raise InputError("initial emission must be nonnegative")
        if isinstance(self.interval, bool) or not isinstance(self.interval, int) or self.interval < 1:
            raise InputError("halving interval must be an integer >= 1")
        object.__setattr__(self, "initial", initial)

    @property
    def supremum(self) -> Fraction:
        return 2 * self.initial * self.interval


@dataclass(frozen=True)
class CustomRange:
    start: int
    end: int | None  # inclusive; None means open-ended
    rate: Fraction


@dataclass(frozen=True)
class Custom:
    """Piecewise-constant schedule over contiguous epoch ranges starting at 0."""

    table: tuple[CustomRange, ...]

    def __post_init__(self) -> None:
        rows = []
        expected = 0
        for i, row in enumerate(self.table):
            if not isinstance(row, CustomRange):
                row = CustomRange(*row)
            rate = to_fraction(row.rate)
            if rate < 0:
                raise InputError("emission rate must be nonnegative")
            if row.start != expected:
                raise InputError(f"custom range {i} starts at {row.start}, expected {expected}")
            if row.end is None:
                if i != len(self.table) - 1:
                    raise InputError("only the last custom range may be open-ended")
            elif row.end < row.start:
                raise InputError(f"custom range {i} ends before it starts")
            rows.append(CustomRange(row.start, row.end, rate))
            expected = None if row.end is None else row.end + 1
        if not rows:
            raise InputError("custom schedule needs at least one range")
        object.__setattr__(self, "table", tuple(rows))


EmissionSchedule = Constant | Halving | Custom


def _check_epoch(epoch: int) -> None:
    if isinstance(epoch, bool) or not isinstance(epoch, int) or epoch < 0:
        raise InputError(f"epoch must be a nonnegative integer, got {epoch!r}")


def emission(s: EmissionSchedule, epoch: int) -> Fraction:
    _check_epoch(epoch)
    if isinstance(s, Constant):
        return s.rate
    if isinstance(s, Halving):
        return s.initial / 2 ** (epoch // s.interval)
    for row in s.table:
        if row.start <= epoch and (row.end is None or epoch <= row.end):
            return row.rate
    raise EpochOutOfCustomRange(epoch)


def cumulative_emission(s: EmissionSchedule, through_epoch: int) -> Fraction:
    """Total emitted over epochs ``0..through_epoch`` inclusive."""
    _check_epoch(through_epoch)
    if isinstance(s, Constant):
        return s.rate * (through_epoch + 1)
    if isinstance(s, Halving):
        periods, rest = divmod(through_epoch + 1, s.interval)
        full = s.initial * s.interval * (2 - Fraction(2, 2**periods))
        return full + rest * s.initial / 2**periods
    total = Fraction(0)
    for row in s.table:
        if row.start > through_epoch:
            break
        end = through_epoch if row.end is None else min(row.end, through_epoch)
        total += row.rate * (end - row.start + 1)
    else:
        if s.table[-1].end is not None and s.table[-1].end < through_epoch:
            raise EpochOutOfCustomRange(through_epoch)
    return total


@dataclass(frozen=True)
class EpochPot:
    emission: Fraction
    fees: Fraction
    treasury_cut: Fraction
    distributable: Fraction


def epoch_pot(emission, fees, treasury_rate) -> EpochPot:
    """Tax the combined emission and fee pot at ``treasury_rate``."""
    emission, fees, rate = (to_fraction(v) for v in (emission, fees, treasury_rate))
    if emission < 0 or fees < 0:
        raise InputError("emission and fees must be nonnegative")
    if not 0 <= rate <= 1:
        raise RateOutOfRange(rate)
    gross = emission + fees
    cut = rate * gross
    return EpochPot(emission, fees, cut, gross - cut)
