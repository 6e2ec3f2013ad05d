"""Grid expansion and certificate construction for batch verification.

Each grid point becomes one certificate: the full parameter echo, the
complete report (every per-permutation value, or every per-N valuation),
and the verdict.  Certificates are identified by a content hash of their
parameters alone, so re-running a sweep reproduces the same ids and the
same bytes except for the timestamp.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from datetime import datetime, timezone

from qsym import __version__
from qsym.padic import (
    PadicContext,
    verify_functional_equation_sweep,
    verify_integral_representation,
    verify_shift_difference,
)
from qsym.rationals import format_rational, parse_rational
from qsym.service.models import (
    Certificate,
    OrderResultModel,
    PermutationValueModel,
    SweepConfig,
    SweepResponse,
    VerifyResponse,
)
from qsym.symmetry import (
    PermutationValue,
    SymmetryInstance,
    VerificationReport,
    verify_theorem,
    verify_theorem1,
)


def _value_model(pv: PermutationValue) -> PermutationValueModel:
    return PermutationValueModel(
        permutation=list(pv.permutation),
        value=format_rational(pv.value),
        cross_value=None if pv.cross_value is None else format_rational(pv.cross_value),
    )


def _report_models(report: VerificationReport):
    values = [_value_model(pv) for pv in report.values]
    orders = None
    if report.kind == "thm1":
        orders = [
            OrderResultModel(
                m=o.m, values=[_value_model(pv) for pv in o.values], verdict=o.verdict
            )
            for o in report.orders
        ]
    witness = None
    if report.first_disagreement is not None:
        witness = [_value_model(pv) for pv in report.first_disagreement]
    return values, orders, witness


def verify_point(
    kind: str,
    n: int,
    m: int | None,
    max_order: int | None,
    x: int,
    q: str,
    weights: tuple[int, ...],
    budget: int,
) -> VerifyResponse:
    """Run one exhaustive S_n verification and shape it for the wire."""
    q_value = parse_rational(q)
    if kind == "thm1":
        assert max_order is not None
        report = verify_theorem1(max_order, x, q_value, weights, budget)
    else:
        assert m is not None
        inst = SymmetryInstance(m=m, x=x, q=q_value, weights=weights)
        report = verify_theorem(kind, inst, budget)
    values, orders, witness = _report_models(report)
    return VerifyResponse(
        kind=kind,
        n=n,
        m=m,
        max_order=max_order,
        x=x,
        q=q,
        weights=list(weights),
        budget=budget,
        values=values,
        orders=orders,
        verdict=report.verdict,
        first_disagreement=witness,
    )


def certificate_id(parameters: dict) -> str:
    """Stable content hash over the canonical parameter JSON."""
    blob = json.dumps(parameters, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _certificate(parameters: dict, report: dict, verdict: bool, timestamp: str) -> Certificate:
    return Certificate(
        certificate_id=f"{parameters['kind']}-{certificate_id(parameters)}",
        tool_version=__version__,
        timestamp=timestamp,
        parameters=parameters,
        report=report,
        verdict=verdict,
    )


def _theorem_points(config: SweepConfig):
    for n in sorted(config.n_values):
        weight_space = itertools.product(
            range(config.weight_min, config.weight_max + 1), repeat=n
        )
        for weights in weight_space:
            for m in sorted(config.m_values):
                for x in sorted(config.x_values):
                    for q in config.q_values:
                        yield n, weights, m, x, q


def run_sweep(config: SweepConfig) -> SweepResponse:
    """Expand the grid, verify every point, and package certificates."""
    timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    certificates: list[Certificate] = []
    if config.kind in ("eq2", "eq6", "eq7"):
        opts = config.padic
        assert opts is not None
        ctx = PadicContext(p=opts.p, precision=opts.precision, q_offset=opts.q_offset)
        run = {
            "eq2": verify_functional_equation_sweep,
            "eq6": verify_integral_representation,
            "eq7": verify_shift_difference,
        }[config.kind]
        for n in sorted(opts.n_values):
            parameters = {
                "kind": config.kind,
                "p": opts.p,
                "q_offset": opts.q_offset,
                "n": n,
                "n_max": opts.n_max,
                "precision": opts.precision,
            }
            check = run(n, opts.n_max, ctx)
            report = {
                "target": format_rational(check.target),
                "guard": check.guard,
                "entries": [
                    {"N": e.N, "valuation": e.valuation, "exact": e.saturated}
                    for e in check.entries
                ],
                "rhs_paths_agree": check.rhs_paths_agree,
                "passed": check.passed,
            }
            certificates.append(_certificate(parameters, report, check.passed, timestamp))
    else:
        for n, weights, m, x, q in _theorem_points(config):
            parameters = {
                "kind": config.kind,
                "n": n,
                "weights": list(weights),
                "x": x,
                "q": q,
                "budget": config.budget,
            }
            parameters["max_order" if config.kind == "thm1" else "m"] = m
            response = verify_point(
                kind=config.kind,
                n=n,
                m=None if config.kind == "thm1" else m,
                max_order=m if config.kind == "thm1" else None,
                x=x,
                q=q,
                weights=weights,
                budget=config.budget,
            )
            certificates.append(
                _certificate(parameters, response.model_dump(), response.verdict, timestamp)
            )
    passed = sum(1 for c in certificates if c.verdict)
    return SweepResponse(
        kind=config.kind,
        passed=passed,
        failed=len(certificates) - passed,
        certificates=certificates,
    )
