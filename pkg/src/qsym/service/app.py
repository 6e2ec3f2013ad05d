"""HTTP surface of the verification engine.

Input problems (bad rationals, forbidden q, length mismatches, budget
overruns) surface as 422 validation errors; a computation that runs but
falsifies its identity still returns 200 with verdict/passed false, so
clients can distinguish "you asked wrong" from "the identity failed".
"""

from __future__ import annotations

from fastapi import FastAPI

from qsym import __version__
from qsym.padic import (
    IntegralCheck,
    PadicContext,
    verify_functional_equation_sweep,
    verify_integral_representation,
    verify_shift_difference,
)
from qsym.qbernoulli import beta_poly, carlitz_beta
from qsym.rationals import format_rational, parse_rational
from qsym.service import sweep as sweep_runner
from qsym.service.models import (
    BetaPolyRequest,
    BetaPolyResponse,
    BetaRequest,
    BetaResponse,
    HealthResponse,
    PadicRequest,
    PadicResponse,
    SweepConfig,
    SweepResponse,
    TSumRequest,
    TSumResponse,
    VerifyRequest,
    VerifyResponse,
)
from qsym.symmetry import t_sum


def run_verify(req: VerifyRequest) -> VerifyResponse:
    return sweep_runner.verify_point(
        kind=req.kind,
        n=req.n,
        m=req.m,
        max_order=req.max_order,
        x=req.x,
        q=req.q,
        weights=tuple(req.weights),
        budget=req.budget,
    )


def run_padic(req: PadicRequest) -> PadicResponse:
    ctx = PadicContext(p=req.p, precision=req.precision, q_offset=req.q_offset)
    if req.check == "eq6":
        check = verify_integral_representation(req.n, req.n_max, ctx)
    elif req.check == "eq2":
        check = verify_functional_equation_sweep(req.n, req.n_max, ctx)
    else:
        check = verify_shift_difference(req.n, req.n_max, ctx)
    return _padic_response(req, ctx, check)


def _padic_response(req: PadicRequest, ctx: PadicContext, check: IntegralCheck) -> PadicResponse:
    return PadicResponse(
        check=req.check,
        p=ctx.p,
        q=ctx.q,
        q_offset=ctx.q_offset,
        n=req.n,
        n_max=req.n_max,
        precision=req.precision,
        target=format_rational(check.target),
        guard=check.guard,
        entries=[
            {"N": e.N, "valuation": e.valuation, "exact": e.saturated} for e in check.entries
        ],
        rhs_paths_agree=check.rhs_paths_agree,
        passed=check.passed,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="qsym", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/beta", response_model=BetaResponse)
    def beta(req: BetaRequest) -> BetaResponse:
        value = carlitz_beta(req.n, parse_rational(req.q))
        return BetaResponse(n=req.n, q=req.q, beta=format_rational(value))

    @app.post("/beta-poly", response_model=BetaPolyResponse)
    def beta_poly_route(req: BetaPolyRequest) -> BetaPolyResponse:
        value = beta_poly(req.n, parse_rational(req.q), req.x)
        return BetaPolyResponse(n=req.n, q=req.q, x=req.x, value=format_rational(value))

    @app.post("/tsum", response_model=TSumResponse)
    def tsum(req: TSumRequest) -> TSumResponse:
        value = t_sum(req.m, req.l, parse_rational(req.q), tuple(req.weights))
        return TSumResponse(
            m=req.m, l=req.l, q=req.q, weights=req.weights, value=format_rational(value)
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        return run_verify(req)

    @app.post("/padic", response_model=PadicResponse)
    def padic(req: PadicRequest) -> PadicResponse:
        return run_padic(req)

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(config: SweepConfig) -> SweepResponse:
        return sweep_runner.run_sweep(config)

    return app


app = create_app()
