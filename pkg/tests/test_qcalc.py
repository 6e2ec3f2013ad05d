"""q-number arithmetic and the two splitting identities."""

import math
import random
from fractions import Fraction

import pytest

from qsym.qcalc import (
    q_base_change_split,
    q_number,
    q_number_at_power,
    q_shift_split,
    require_q_param,
)

Q_SAMPLES = [Fraction(2), Fraction(1, 2), Fraction(-2), Fraction(3, 5), Fraction(7), Fraction(-5, 3)]


def test_q_number_basics():
    q = Fraction(3, 5)
    assert q_number(0, q) == 0
    assert q_number(1, q) == 1
    assert q_number(3, 2) == 7
    assert q_number(-1, 2) == Fraction(-1, 2)


def test_q_number_limit_at_one():
    # q = 1 is the one place the limit value is substituted
    assert q_number(5, 1) == 5
    assert q_number(-3, Fraction(1)) == -3


def test_q_number_rejects_zero_base():
    with pytest.raises(ValueError):
        q_number(2, 0)


@pytest.mark.parametrize("bad", [0, 1, -1, Fraction(1), Fraction(-1)])
def test_q_param_restriction(bad):
    with pytest.raises(ValueError):
        require_q_param(bad)


def test_q_param_accepts_everything_else():
    for q in Q_SAMPLES:
        assert require_q_param(q) == q


def test_base_change_split_examples():
    q = Fraction(3, 5)
    one, five = q_base_change_split(1, 5, q)
    assert one == 1 and five == q_number(5, q)

    a, b = q_base_change_split(2, 3, Fraction(2))
    assert (a, b) == (3, 21)
    assert a * b == q_number(6, 2) == 63

    three, one = q_base_change_split(3, 1, q)
    assert (three, one) == (q_number(3, q), 1)


def test_base_change_split_rejects_nonpositive():
    with pytest.raises(ValueError):
        q_base_change_split(0, 3, Fraction(2))


def test_shift_split_examples():
    q = Fraction(2)
    assert q_shift_split(0, 9, q) == (0, 1, q_number(9, q))
    c, qc, d = q_shift_split(2, 3, q)
    assert (c, qc, d) == (3, 4, 7)
    assert c + qc * d == q_number(5, q) == 31
    c, qc, d = q_shift_split(4, 0, Fraction(3, 5))
    assert (c, qc, d) == (q_number(4, Fraction(3, 5)), Fraction(3, 5) ** 4, 0)


def test_additive_split_identity_random():
    rng = random.Random(0xADD5)
    for _ in range(200):
        q = rng.choice(Q_SAMPLES)
        a = rng.randint(0, 30)
        b = rng.randint(-30, 30)
        assert q_number(a + b, q) == q_number(a, q) + q**a * q_number(b, q)


def test_base_change_identity_random():
    rng = random.Random(0xBA5E)
    for _ in range(200):
        q = rng.choice(Q_SAMPLES)
        a = rng.randint(1, 12)
        b = rng.randint(1, 12)
        assert q_number(a * b, q) == q_number(a, q) * q_number(b, q**a)


def _random_weight_setup(rng: random.Random):
    n = rng.randint(2, 4)
    weights = tuple(rng.randint(1, 6) for _ in range(n))
    x = rng.randint(0, 4)
    y = rng.randint(0, 6)
    ks = tuple(rng.randrange(w) for w in weights[:-1])
    q = rng.choice(Q_SAMPLES)
    return q, weights, x, y, ks


def _split_data(weights, ks):
    rest, wn = weights[:-1], weights[-1]
    P = math.prod(rest)
    S = sum((P // w) * k for w, k in zip(rest, ks))
    return rest, wn, P, S


def check_full_additive_split(q, weights, x, y, ks):
    """[y + wn x + wn sum k_j/w_j]_{q^P} against its two-piece split.

    The left side's fractional argument is exact because multiplying it by
    P = prod(w_j) gives the integer exponent P(y + wn x) + wn S.
    """
    rest, wn, P, S = _split_data(weights, ks)
    Q = q**P
    lhs = q_number_at_power(q ** (P * (y + wn * x) + wn * S), Q)
    rhs = (
        q_number(wn, q) / q_number(P, q) * q_number(S, q**wn)
        + q ** (wn * S) * q_number(y + wn * x, Q)
    )
    assert lhs == rhs


def check_full_base_change(q, weights, x, y, ks):
    """[P y + P wn x + wn S]_q == [P]_q * [y + wn x + wn sum k_j/w_j]_{q^P}."""
    rest, wn, P, S = _split_data(weights, ks)
    lhs = q_number(P * y + P * wn * x + wn * S, q)
    rhs = q_number(P, q) * q_number_at_power(q ** (P * (y + wn * x) + wn * S), q**P)
    assert lhs == rhs


def test_full_additive_split_random():
    rng = random.Random(0x13)
    for _ in range(200):
        check_full_additive_split(*_random_weight_setup(rng))


def test_full_base_change_random():
    rng = random.Random(0x10)
    for _ in range(200):
        check_full_base_change(*_random_weight_setup(rng))


def test_q_number_at_power_consistency():
    # supplying Q^z for integer z must reproduce the direct bracket
    rng = random.Random(0xAB)
    for _ in range(100):
        q = rng.choice(Q_SAMPLES)
        base_exp = rng.randint(1, 8)
        z = rng.randint(-6, 6)
        Q = q**base_exp
        assert q_number_at_power(Q**z, Q) == q_number(z, Q)
