"""q-number primitives and the two splitting identities used downstream.

The q-analogue of an integer x is [x]_q = (1 - q^x)/(1 - q), which tends
to x as q -> 1.  Two rewriting rules drive all later bookkeeping:

  base change:    [ab]_q     = [a]_q * [b]_{q^a}
  additive split: [c + d]_q  = [c]_q + q^c * [d]_q

Everything here stays inside the rationals.  A bracket whose argument is a
fraction a/b is never evaluated directly: callers multiply the argument
through by the base-change exponent so the power of q that appears is an
integer, then use ``q_number_at_power`` with that power.
"""

from __future__ import annotations

from fractions import Fraction

RationalLike = Fraction | int


def require_q_param(q: RationalLike) -> Fraction:
    """Validate the standing restriction q not in {0, 1, -1}.

    A rational q outside the unit circle (|q| != 1) has q^k != 1 for every
    k >= 1, so all brackets [k]_q and all recurrence denominators q^(n+1)-1
    stay nonzero.  Returns q as a canonical Fraction.
    """
    q = Fraction(q)
    if q in (0, 1, -1):
        raise ValueError(f"q must lie outside {{0, 1, -1}}, got {q}")
    return q


def q_number(x: int, q: RationalLike) -> Fraction:
    """The q-analogue [x]_q = (1 - q^x)/(1 - q).

    q = 1 is permitted here only, with the limit value x; q = 0 is
    rejected (negative x would need 0^x).
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("q = 0 is not a valid q-number base")
    if q == 1:
        return Fraction(x)
    return (1 - q**x) / (1 - q)


def q_number_at_power(q_pow_arg: Fraction, q_pow_base: Fraction) -> Fraction:
    """[z]_Q computed from the powers Q^z and Q directly: (1 - Q^z)/(1 - Q).

    This is how fractional bracket arguments are evaluated exactly: the
    caller supplies Q^z as an integer power of the underlying q.
    """
    if q_pow_base == 1:
        raise ValueError("bracket base power must differ from 1")
    return (1 - Fraction(q_pow_arg)) / (1 - Fraction(q_pow_base))


def q_base_change_split(a: int, b: int, q: RationalLike) -> tuple[Fraction, Fraction]:
    """Split [ab]_q into the pair ([a]_q, [b]_{q^a}) whose product it equals."""
    if a < 1 or b < 1:
        raise ValueError("base-change split needs a, b >= 1")
    q = require_q_param(q)
    return q_number(a, q), q_number(b, q**a)


def q_shift_split(c: int, d: int, q: RationalLike) -> tuple[Fraction, Fraction, Fraction]:
    """Split [c + d]_q into ([c]_q, q^c, [d]_q) with [c+d]_q = [c]_q + q^c [d]_q."""
    if c < 0:
        raise ValueError("additive split needs c >= 0")
    q = require_q_param(q)
    return q_number(c, q), q**c, q_number(d, q)
