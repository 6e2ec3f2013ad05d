"""Symmetric-sum evaluators over weight tuples and exhaustive S_n checks.

Given weights (w_1, ..., w_n), a series order m, an integer x and a
rational q, two expressions are evaluated for a permutation sigma:

* ``theorem2_value`` -- the residue-twisted sum of q-Bernoulli polynomial
  values: with u_j = w_{sigma(j)} for j < n, wn = w_{sigma(n)},
  P = prod(u) and Q = q^P,

      [P]_q^(m-1) * sum_k q^(wn S(k)) * beta_{m,Q}(wn x + wn sum_j k_j/u_j)

  where k ranges over residue tuples 0 <= k_j < u_j and
  S(k) = sum_j (prod_{i != j} u_i) k_j.  The fractional argument is exact:
  the polynomial depends on its argument z only through Q^z, and
  Q^z = q^(wn P x + wn S(k)) is an integer power of q by construction.

* ``theorem3_value`` -- the equivalent binomial/T-sum form obtained by
  splitting the bracket additively:

      sum_l C(m,l) [P]_q^(l-1) [wn]_q^(m-l) beta_{l,Q}(wn x)
                 * T_{m, q^wn}(u | l)

  with T the residue-weighted power sum implemented by ``t_sum``.

Invariance of either value over all sigma in S_n, and the pointwise
equality of the two forms, are checked exhaustively by ``verify_theorem``.
``verify_theorem1`` reduces the generating-series statement to per-order
checks: the order-m coefficient of the series form is the theorem-2
expression, so verifying orders 0..M verifies the series identity to
truncation depth M.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from qsym.qbernoulli import beta_poly, beta_poly_at_power
from qsym.qcalc import RationalLike, q_number, require_q_param
from qsym.rationals import binomial

DEFAULT_PERMUTATION_BUDGET = 720  # 6!


class PermutationBudgetError(ValueError):
    """Raised when n! exceeds the configured enumeration budget."""


@dataclass(frozen=True)
class SymmetryInstance:
    """One evaluation point: series order m, integer shift x, base q, weights."""

    m: int
    x: int
    q: Fraction
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", require_q_param(self.q))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.m < 0:
            raise ValueError("series order m must be >= 0")
        if len(self.weights) < 2:
            raise ValueError("need at least two weights")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class PermutationValue:
    """Value of one evaluator at one permutation (1-based image array)."""

    permutation: tuple[int, ...]
    value: Fraction
    cross_value: Fraction | None = None


@dataclass(frozen=True)
class OrderResult:
    """Per-order outcome inside a truncated series verification."""

    m: int
    values: tuple[PermutationValue, ...]
    verdict: bool


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an exhaustive S_n check.

    ``verdict`` is True iff every listed value is structurally equal (and,
    for kind "cross", each permutation's two forms agree).  The first
    offending pair is kept so callers can surface a concrete witness.
    """

    kind: str
    instance: SymmetryInstance
    values: tuple[PermutationValue, ...]
    verdict: bool
    orders: tuple[OrderResult, ...] = field(default=())
    first_disagreement: tuple[PermutationValue, PermutationValue] | None = None

    @property
    def max_order(self) -> int:
        """For kind "thm1" the instance's m field carries the truncation order."""
        return self.instance.m


def residue_tuples(weights: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Lexicographic stream of residue tuples k with 0 <= k_j < weights[j]."""
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    return itertools.product(*(range(w) for w in weights))


def complement_products(weights: Sequence[int]) -> tuple[int, ...]:
    """For each position j, the product of all other weights."""
    total = math.prod(weights)
    # weights may be repeated, so divide rather than re-multiply per slot
    return tuple(total // w for w in weights)


def weighted_residue_sum(products: Sequence[int], k: Sequence[int]) -> int:
    """S(k) = sum_j products[j] * k_j."""
    return sum(c * kj for c, kj in zip(products, k))


def t_sum(m: int, l: int, q: RationalLike, weights: Sequence[int]) -> Fraction:
    """Residue-weighted power sum T_{m,q}(weights | l).

    Sums q^((l+1) S(k)) [S(k)]_q^(m-l) over all residue tuples, with the
    0^0 = 1 convention covering the S(k) = 0, m = l corner.
    """
    if l > m:
        raise ValueError(f"t_sum requires l <= m, got l={l} m={m}")
    q = require_q_param(q)
    products = complement_products(weights)
    total = Fraction(0)
    for k in residue_tuples(weights):
        s = weighted_residue_sum(products, k)
        total += q ** ((l + 1) * s) * q_number(s, q) ** (m - l)
    return total


def _split_weights(sigma: Sequence[int], weights: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Apply a 0-based permutation and split off the last weight."""
    permuted = tuple(weights[i] for i in sigma)
    return permuted[:-1], permuted[-1]


def theorem2_value(sigma: Sequence[int], inst: SymmetryInstance) -> Fraction:
    """Residue-twisted q-Bernoulli polynomial sum for permutation sigma (0-based)."""
    u, wn = _split_weights(sigma, inst.weights)
    q, m, x = inst.q, inst.m, inst.x
    P = math.prod(u)
    Q = q**P
    products = complement_products(u)
    total = Fraction(0)
    for k in residue_tuples(u):
        s = weighted_residue_sum(products, k)
        exponent = wn * (P * x + s)
        assert isinstance(exponent, int)  # every q-power here must be integral
        total += q ** (wn * s) * beta_poly_at_power(m, Q, q**exponent)
    return q_number(P, q) ** (m - 1) * total


def theorem3_value(sigma: Sequence[int], inst: SymmetryInstance) -> Fraction:
    """Binomial/T-sum form for permutation sigma; equals theorem2_value pointwise."""
    u, wn = _split_weights(sigma, inst.weights)
    q, m, x = inst.q, inst.m, inst.x
    P = math.prod(u)
    Q = q**P
    q_wn = q**wn
    bracket_P = q_number(P, q)
    bracket_wn = q_number(wn, q)
    total = Fraction(0)
    for l in range(m + 1):
        total += (
            binomial(m, l)
            * bracket_P ** (l - 1)
            * bracket_wn ** (m - l)
            * beta_poly(l, Q, wn * x)
            * t_sum(m, l, q_wn, u)
        )
    return total


def permutations_in_order(n: int, budget: int = DEFAULT_PERMUTATION_BUDGET) -> list[tuple[int, ...]]:
    """All 0-based permutations of range(n) in lexicographic order, budget-checked."""
    count = math.factorial(n)
    if count > budget:
        raise PermutationBudgetError(
            f"S_{n} has {count} elements, exceeding the budget of {budget}"
        )
    return list(itertools.permutations(range(n)))


def _one_based(sigma: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in sigma)


def _collect(
    kind: str, inst: SymmetryInstance, budget: int
) -> tuple[tuple[PermutationValue, ...], bool, tuple[PermutationValue, PermutationValue] | None]:
    rows: list[PermutationValue] = []
    for sigma in permutations_in_order(inst.n, budget):
        value = theorem3_value(sigma, inst) if kind == "thm3" else theorem2_value(sigma, inst)
        cross = theorem3_value(sigma, inst) if kind == "cross" else None
        rows.append(PermutationValue(_one_based(sigma), value, cross))
    verdict = True
    witness: tuple[PermutationValue, PermutationValue] | None = None
    for row in rows[1:]:
        if row.value != rows[0].value:
            verdict, witness = False, (rows[0], row)
            break
    if verdict and kind == "cross":
        for row in rows:
            if row.value != row.cross_value:
                verdict, witness = False, (row, row)
                break
    return tuple(rows), verdict, witness


def verify_theorem(
    kind: str, inst: SymmetryInstance, budget: int = DEFAULT_PERMUTATION_BUDGET
) -> VerificationReport:
    """Evaluate one symmetric form (or both, for "cross") over all of S_n.

    kind "thm2" and "thm3" check invariance of the respective form; kind
    "cross" additionally requires the two forms to coincide at every
    permutation, which certifies the additive-split expansion relating
    them.  Values are reported in lexicographic permutation order, so the
    report is deterministic.
    """
    if kind not in ("thm2", "thm3", "cross"):
        raise ValueError(f"unknown verification kind {kind!r}")
    values, verdict, witness = _collect(kind, inst, budget)
    return VerificationReport(kind, inst, values, verdict, first_disagreement=witness)


def verify_theorem1(
    max_order: int,
    x: int,
    q: RationalLike,
    weights: Sequence[int],
    budget: int = DEFAULT_PERMUTATION_BUDGET,
) -> VerificationReport:
    """Coefficient-wise check of the generating-series symmetry.

    The order-m series coefficient equals the theorem-2 expression, so the
    series identity holds to truncation depth M iff the theorem-2 check
    passes for every m <= M.  The formal series variable never appears:
    it is represented entirely by the truncation order.
    """
    if max_order < 0:
        raise ValueError("truncation order must be >= 0")
    orders: list[OrderResult] = []
    witness: tuple[PermutationValue, PermutationValue] | None = None
    for m in range(max_order + 1):
        inst = SymmetryInstance(m=m, x=x, q=Fraction(q), weights=tuple(weights))
        values, verdict, w = _collect("thm2", inst, budget)
        orders.append(OrderResult(m, values, verdict))
        if witness is None and w is not None:
            witness = w
    top = SymmetryInstance(m=max_order, x=x, q=Fraction(q), weights=tuple(weights))
    verdict = all(o.verdict for o in orders)
    return VerificationReport(
        "thm1", top, (), verdict, orders=tuple(orders), first_disagreement=witness
    )
