"""Request/response schemas for the verification service.

Rationals travel as text in the canonical "num/den" form (denominator
omitted when 1) so every value survives the wire exactly; validators
canonicalize on the way in and reject bases that violate the standing
q restriction.  Verdict-bearing responses carry the full per-permutation
value list, so a certificate can be re-checked without this tool.
"""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from qsym.padic import is_odd_prime
from qsym.qcalc import require_q_param
from qsym.rationals import format_rational, parse_rational


def canonical_q(text: str) -> str:
    """Parse, check the q restriction, and re-render canonically."""
    try:
        value = parse_rational(text)
    except ZeroDivisionError as exc:  # pydantic only maps ValueError to 422
        raise ValueError(str(exc)) from exc
    return format_rational(require_q_param(value))


class BetaRequest(BaseModel):
    n: int = Field(ge=0)
    q: str

    @field_validator("q")
    @classmethod
    def _q(cls, v: str) -> str:
        return canonical_q(v)


class BetaResponse(BaseModel):
    n: int
    q: str
    beta: str


class BetaPolyRequest(BaseModel):
    n: int = Field(ge=0)
    q: str
    x: int

    @field_validator("q")
    @classmethod
    def _q(cls, v: str) -> str:
        return canonical_q(v)


class BetaPolyResponse(BaseModel):
    n: int
    q: str
    x: int
    value: str


class TSumRequest(BaseModel):
    m: int = Field(ge=0)
    l: int = Field(ge=0)
    q: str
    weights: list[int] = Field(min_length=1)

    @field_validator("q")
    @classmethod
    def _q(cls, v: str) -> str:
        return canonical_q(v)

    @field_validator("weights")
    @classmethod
    def _weights(cls, v: list[int]) -> list[int]:
        if any(w < 1 for w in v):
            raise ValueError("weights must be positive integers")
        return v

    @model_validator(mode="after")
    def _l_le_m(self):
        if self.l > self.m:
            raise ValueError(f"t-sum requires l <= m, got l={self.l} m={self.m}")
        return self


class TSumResponse(BaseModel):
    m: int
    l: int
    q: str
    weights: list[int]
    value: str


VerifyKind = Literal["thm1", "thm2", "thm3", "cross"]


class VerifyRequest(BaseModel):
    kind: VerifyKind
    n: int = Field(ge=2)
    m: Optional[int] = Field(default=None, ge=0)
    max_order: Optional[int] = Field(default=None, ge=0)
    x: int = 0
    q: str
    weights: list[int]
    budget: int = Field(default=720, ge=1)

    @field_validator("q")
    @classmethod
    def _q(cls, v: str) -> str:
        return canonical_q(v)

    @model_validator(mode="after")
    def _consistent(self):
        if len(self.weights) != self.n:
            raise ValueError(f"expected {self.n} weights, got {len(self.weights)}")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if self.kind == "thm1":
            if self.max_order is None:
                raise ValueError("kind thm1 needs max_order")
            if self.m is not None:
                raise ValueError("kind thm1 takes max_order, not m")
        else:
            if self.m is None:
                raise ValueError(f"kind {self.kind} needs m")
            if self.max_order is not None:
                raise ValueError(f"kind {self.kind} takes m, not max_order")
        if math.factorial(self.n) > self.budget:
            raise ValueError(
                f"S_{self.n} has {math.factorial(self.n)} permutations, "
                f"exceeding the budget of {self.budget}"
            )
        return self


class PermutationValueModel(BaseModel):
    permutation: list[int]
    value: str
    cross_value: Optional[str] = None


class OrderResultModel(BaseModel):
    m: int
    values: list[PermutationValueModel]
    verdict: bool


class VerifyResponse(BaseModel):
    kind: str
    n: int
    m: Optional[int]
    max_order: Optional[int]
    x: int
    q: str
    weights: list[int]
    budget: int
    values: list[PermutationValueModel]
    orders: Optional[list[OrderResultModel]]
    verdict: bool
    first_disagreement: Optional[list[PermutationValueModel]]


PadicCheck = Literal["eq2", "eq6", "eq7"]


class PadicRequest(BaseModel):
    check: PadicCheck
    p: int
    q_offset: int
    n: int = Field(ge=0)
    n_max: int = Field(ge=1)
    precision: int = Field(ge=1)

    @field_validator("p")
    @classmethod
    def _p(cls, v: int) -> int:
        if not is_odd_prime(v):
            raise ValueError(f"p must be an odd prime, got {v}")
        return v

    @field_validator("q_offset")
    @classmethod
    def _offset(cls, v: int) -> int:
        if v == 0:
            raise ValueError("q_offset must be nonzero (q = 1 has no checks)")
        return v


class ConvergenceEntryModel(BaseModel):
    N: int
    valuation: int
    exact: bool


class PadicResponse(BaseModel):
    check: str
    p: int
    q: int
    q_offset: int
    n: int
    n_max: int
    precision: int
    target: str
    guard: int
    entries: list[ConvergenceEntryModel]
    rhs_paths_agree: Optional[bool]
    passed: bool


SweepKind = Literal["thm1", "thm2", "thm3", "cross", "eq2", "eq6", "eq7"]


class PadicSweepOptions(BaseModel):
    p: int
    q_offset: int
    n_values: list[int] = Field(min_length=1)
    n_max: int = Field(ge=1)
    precision: int = Field(ge=1)

    @field_validator("p")
    @classmethod
    def _p(cls, v: int) -> int:
        if not is_odd_prime(v):
            raise ValueError(f"p must be an odd prime, got {v}")
        return v

    @field_validator("q_offset")
    @classmethod
    def _offset(cls, v: int) -> int:
        if v == 0:
            raise ValueError("q_offset must be nonzero")
        return v

    @field_validator("n_values")
    @classmethod
    def _ns(cls, v: list[int]) -> list[int]:
        if any(n < 0 for n in v):
            raise ValueError("n values must be >= 0")
        return v


class SweepConfig(BaseModel):
    """Grid description for a batch verification run.

    Theorem kinds sweep the product of n_values, m_values (truncation
    orders for thm1), x_values, q_values and every weight tuple drawn
    from [weight_min, weight_max]^n; the p-adic kinds sweep the n values
    in ``padic``.
    """

    kind: SweepKind
    n_values: list[int] = []
    m_values: list[int] = []
    x_values: list[int] = []
    q_values: list[str] = []
    weight_min: int = Field(default=1, ge=1)
    weight_max: int = Field(default=3, ge=1)
    budget: int = Field(default=720, ge=1)
    padic: Optional[PadicSweepOptions] = None
    output_dir: str = "certificates"

    @model_validator(mode="after")
    def _consistent(self):
        if self.kind in ("eq2", "eq6", "eq7"):
            if self.padic is None:
                raise ValueError(f"kind {self.kind} needs the padic options block")
            return self
        for name in ("n_values", "m_values", "x_values", "q_values"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty for kind {self.kind}")
        if any(n < 2 for n in self.n_values):
            raise ValueError("n values must be >= 2")
        if any(m < 0 for m in self.m_values):
            raise ValueError("m values must be >= 0")
        if self.weight_max < self.weight_min:
            raise ValueError("weight_max must be >= weight_min")
        self.q_values = [canonical_q(q) for q in self.q_values]
        worst = max(math.factorial(n) for n in self.n_values)
        if worst > self.budget:
            raise ValueError(f"budget {self.budget} below the largest S_n size {worst}")
        return self


class Certificate(BaseModel):
    """Self-contained record of one grid point: parameters in, values out."""

    certificate_id: str
    tool_version: str
    timestamp: str
    parameters: dict
    report: dict
    verdict: bool


class SweepResponse(BaseModel):
    kind: str
    passed: int
    failed: int
    certificates: list[Certificate]


class HealthResponse(BaseModel):
    status: str
    version: str
