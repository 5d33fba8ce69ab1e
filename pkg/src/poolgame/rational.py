"""Exact rational parsing and formatting."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import InputError


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` / decimal strings to a Fraction.

    Floats are rejected: their binary expansion is rarely the number the
    caller meant, and verdicts here depend on exact comparisons.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def fmt(value: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
