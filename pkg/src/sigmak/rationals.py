"""Exact rational scalars and their string forms.

The whole certificate path works over ``fractions.Fraction``: arbitrary
precision, always in lowest terms, positive denominator.  This module only
adds the canonical string round-trip used by the JSON interfaces and a few
small numeric helpers.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"19"``, ``"-64"``, ``"1/3"`` or a decimal string like ``"0.25"``.

    Decimal strings are read as exact scaled integers, never through binary
    floating point.
    """
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Canonical string: integer part only, or ``"p/q"`` in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sign(value) -> int:
    """-1, 0 or +1."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def comb0(n: int, k: int) -> int:
    """Binomial coefficient with the convention that out-of-range indices give 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def round_half_even(value: Fraction, digits: int) -> Fraction:
    """Round to ``digits`` decimal places, ties to the even last digit."""
    scale = Fraction(10) ** digits
    shifted = value * scale
    floor = shifted.numerator // shifted.denominator
    rest = shifted - floor
    if rest > Fraction(1, 2):
        floor += 1
    elif rest == Fraction(1, 2) and floor % 2 != 0:
        floor += 1
    return Fraction(floor, scale.numerator)


def format_decimal(value: Fraction, digits: int) -> str:
    """Fixed-point decimal string with exactly ``digits`` fractional digits."""
    rounded = round_half_even(value, digits)
    scaled = rounded * 10**digits
    units = int(scaled)
    neg = units < 0
    units = abs(units)
    whole, frac = divmod(units, 10**digits)
    body = f"{whole}.{frac:0{digits}d}" if digits > 0 else str(whole)
    if neg and units != 0:
        return "-" + body
    return body
