"""Classical Bernoulli numbers, Carlitz q-Bernoulli numbers, and the
q-Bernoulli polynomials, all as exact rationals.

The q-deformed numbers beta_{n,q} satisfy the umbral recurrence

    beta_{0,q} = 1,
    q (q beta + 1)^n - beta_n = 1 if n == 1 else 0    (n >= 1),

where beta^l is read as beta_l after binomial expansion.  Both sides carry
a beta_n term; collecting them gives the explicit solve used here:

    beta_n = (delta_{n,1} - q * sum_{l<n} C(n,l) q^l beta_l) / (q^(n+1) - 1).

The divisor q^(n+1) - 1 is why q must stay outside {0, 1, -1}.  The
q-Bernoulli polynomial is

    beta_{n,q}(x) = sum_l C(n,l) q^(l x) [x]_q^(n-l) beta_{l,q},

which depends on x only through q^x; ``beta_poly_at_power`` exposes that
dependence so callers can evaluate at fractional arguments by supplying
the exact power q^x themselves.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from qsym.qcalc import RationalLike, q_number, require_q_param
from qsym.rationals import binomial


class BetaCache:
    """Memoized beta_{n,q} sequence for a single q.

    Each newly computed value is substituted back into the defining
    recurrence and the residual compared against the expected delta, so a
    bad insert fails immediately rather than poisoning later values.
    """

    def __init__(self, q: RationalLike):
        self.q = require_q_param(q)
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("beta index must be >= 0")
        with self._lock:
            while len(self._values) <= n:
                self._append_next()
            return self._values[n]

    def _append_next(self) -> None:
        q = self.q
        n = len(self._values)
        delta = Fraction(1) if n == 1 else Fraction(0)
        acc = sum(binomial(n, l) * q**l * self._values[l] for l in range(n))
        value = (delta - q * acc) / (q ** (n + 1) - 1)
        residual = q * (acc + q**n * value) - value
        if residual != delta:
            raise ArithmeticError(f"recurrence residual {residual} != {delta} at n={n}")
        self._values.append(value)


_caches: dict[Fraction, BetaCache] = {}
_caches_lock = threading.Lock()


def _cache_for(q: Fraction) -> BetaCache:
    with _caches_lock:
        cache = _caches.get(q)
        if cache is None:
            cache = _caches[q] = BetaCache(q)
        return cache


def carlitz_beta(n: int, q: RationalLike, cache: BetaCache | None = None) -> Fraction:
    """The n-th Carlitz q-Bernoulli number beta_{n,q} for rational q.

    Values are memoized per canonical q; pass an explicit BetaCache to
    keep the memo private to one computation.
    """
    q = require_q_param(q)
    if cache is None:
        cache = _cache_for(q)
    elif cache.q != q:
        raise ValueError("cache was built for a different q")
    return cache.value(n)


def beta_poly(n: int, q: RationalLike, x: int) -> Fraction:
    """q-Bernoulli polynomial beta_{n,q}(x) at an integer argument."""
    q = require_q_param(q)
    qx = q**x
    bracket = q_number(x, q)
    return sum(
        binomial(n, l) * qx**l * bracket ** (n - l) * carlitz_beta(l, q)
        for l in range(n + 1)
    )


def beta_poly_at_power(n: int, q_base: RationalLike, q_pow_arg: Fraction) -> Fraction:
    """beta_{n,Q}(y) evaluated from the power Q^y instead of y itself.

    The polynomial depends on y only through Q^y, so supplying
    q_pow_arg = Q^y extends the integer evaluation to any argument whose
    q-power is exactly representable; [y]_Q becomes (1 - Q^y)/(1 - Q).
    """
    Q = require_q_param(q_base)
    qy = Fraction(q_pow_arg)
    if qy == 0:
        raise ValueError("Q^y = 0 is unreachable for any argument y")
    bracket = (1 - qy) / (1 - Q)
    return sum(
        binomial(n, l) * qy**l * bracket ** (n - l) * carlitz_beta(l, Q)
        for l in range(n + 1)
    )


_classical: list[Fraction] = [Fraction(1)]
_classical_lock = threading.Lock()


def classical_bernoulli(n: int) -> Fraction:
    """Classical Bernoulli number B_n (B_1 = -1/2 convention).

    Solved from sum_{l<=k} C(k+1, l) B_l = 0 for k >= 1, the rearranged
    form of the umbral relation (B + 1)^k - B_k = delta_{k,1}.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    with _classical_lock:
        while len(_classical) <= n:
            k = len(_classical)
            acc = sum(binomial(k + 1, l) * _classical[l] for l in range(k))
            _classical.append(-acc / (k + 1))
        return _classical[n]
