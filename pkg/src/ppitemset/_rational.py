"""Exact-rational helpers shared across modules."""

from fractions import Fraction
from numbers import Rational
import math


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings ("0.4", "3/2") and floats.

    Floats go through their shortest repr so that ``0.4`` becomes ``2/5``
    rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def format_ratio(value: Fraction) -> str:
    """Stable text form used in reports: shortest float repr."""
    return repr(float(value))
