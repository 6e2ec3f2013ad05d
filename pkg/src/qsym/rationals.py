"""Exact rational scalars and the shared "num/den" text format.

Python integers are already arbitrary precision, and ``fractions.Fraction``
maintains the canonical form every identity check relies on (gcd-reduced,
denominator positive, zero stored as 0/1), so the scalar layer is a thin
contract over the standard library: named field operations with explicit
error behaviour, exact integer powers, binomial coefficients, and the
rational literal format used by the CLI and the JSON certificates.

Equality of canonical fractions is structural equality, which is exactly
what "two expressions agree" means everywhere in this package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[+-]?\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal "num/den" (den omitted when it is 1).

    Raises ValueError on malformed input and ZeroDivisionError on a zero
    denominator.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = s.partition("/")
    if den:
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in rational literal {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(value: Fraction) -> str:
    """Render a canonical fraction as "num/den", omitting a denominator of 1."""
    return str(Fraction(value))


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    """Exact sum."""
    return a + b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    """Exact product."""
    return a * b


def rat_neg(a: Fraction) -> Fraction:
    """Exact negation."""
    return -a


def rat_inv(a: Fraction) -> Fraction:
    """Exact multiplicative inverse; rejects zero."""
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / a


def rat_pow(a: Fraction, e: int) -> Fraction:
    """Exact integer power, with the 0**0 == 1 empty-product convention."""
    if a == 0 and e < 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return Fraction(a) ** e


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); 0 when k > n, error when negative."""
    return math.comb(n, k)
