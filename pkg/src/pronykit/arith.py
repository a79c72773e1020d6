"""Scalars: exact rationals and the guarded float used by approximate runs.

Exact values are plain ``fractions.Fraction`` objects.  They are immutable,
always in lowest terms with positive denominator, and their operators give
exact field arithmetic, raising ``ZeroDivisionError`` on division by zero.
This module adds the strict literal syntax used in JSON files, the canonical
formatter, the integer logarithm needed to invert monomial label maps, and
the checkpoint keeping NaN/inf out of the approximate pipeline.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import BadBase, BoundExceeded, MalformedLiteral, NonFinite, ZeroDenominator

_LITERAL = re.compile(r"-?[0-9]+(/[0-9]+)?\Z")

INTEGER_LOG_BOUND = 4096


def rational_parse(text):
    """Parse ``p`` or ``p/q`` into a Fraction.

    The grammar is deliberately strict: an optional leading minus, digits,
    optionally a slash and digits.  No whitespace, no decimal points, no
    exponents, no sign on the denominator.
    """
    if not isinstance(text, str) or not _LITERAL.match(text):
        raise MalformedLiteral(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den:
        if int(den) == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def rational_format(value):
    """Canonical text for an exact scalar: ``p`` or ``p/q`` in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def approx(value):
    """Coerce to float, refusing NaN and infinities."""
    try:
        out = float(value)
    except OverflowError as exc:
        raise NonFinite(str(exc)) from exc
    if not math.isfinite(out):
        raise NonFinite(f"non-finite value {out!r}")
    return out


def integer_log(value, base, bound=INTEGER_LOG_BOUND):
    """Least natural k with base**k == value, or None if there is none.

    Works for any rational base with |base| not in {0, 1}, including bases
    of absolute value below one (so (1/27, 1/3) -> 3).  ``bound`` caps the
    exponent search; hitting it raises rather than silently answering None,
    since a None from this function is a semantic claim.
    """
    value = Fraction(value)
    base = Fraction(base)
    if base in (0, 1, -1):
        raise BadBase(f"integer_log base {rational_format(base)}")
    if value == 0:
        return None
    current = Fraction(1)
    absbase = abs(base)
    absvalue = abs(value)
    for k in range(bound + 1):
        if current == value:
            return k
        # monotone |base**k| lets us stop as soon as the target is passed
        if absbase > 1:
            if abs(current) > absvalue:
                return None
        elif abs(current) < absvalue:
            return None
        current *= base
    raise BoundExceeded(f"no exponent up to {bound} for base {rational_format(base)}")
