"""FastAPI application exposing the valuation core.

Error mapping: InputError (including ParseError) becomes HTTP 400 and
DomainError becomes HTTP 422, both with a structured
``{"detail": {"type": ..., "message": ...}}`` body so clients can
distinguish bad input from numerically inadmissible input. Request-shape
violations keep FastAPI's native 422 list-form detail.
"""

from __future__ import annotations

import csv
import io
import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..benford import benford_screen
from ..errors import DomainError, InputError
from ..forecast import parse_assumptions, project_flows
from ..lim import (
    FelthamOhlsonParams,
    OhlsonParams,
    fo_coefficients,
    fo_value,
    ohlson_coefficients,
    ohlson_value,
    ohlson_value_weighted,
)
from ..multiples import parse_comparables, run_comps
from ..reconcile import build_report
from ..render import (
    benford_payload,
    lim_payload,
    multiples_payload,
    reconciliation_payload,
    sensitivity_payload,
    valuation_payload,
)
from ..sensitivity import MODELS, sensitivity_grid
from ..statements import parse_statements_file
from . import schemas

__all__ = ["create_app"]


def _prepared_inputs(
    statements_text: str,
    assumptions_text: str,
    wacc: float | None = None,
    growth: float | None = None,
):
    """Parse both input files, apply rate overrides, project the flow series.

    Returns (series, assumptions, nfl, nci) with the financial-position
    figures taken from the base balance sheet (zero when not reported).
    """
    statements = parse_statements_file(statements_text)
    assumptions = parse_assumptions(assumptions_text)
    if wacc is not None or growth is not None:
        assumptions = assumptions.with_rates(wacc=wacc, sales_growth=growth)
    series = project_flows(statements, assumptions)
    balance, _ = statements.base()
    nfl = balance.net_financial_liabilities or 0.0
    nci = balance.noncontrolling_interest or 0.0
    return series, assumptions, nfl, nci


def _numeric_cells(text: str) -> list[float]:
    """Every cell of a csv text that parses as a finite number."""
    values = []
    for row in csv.reader(io.StringIO(text)):
        for cell in row:
            try:
                value = float(cell)
            except ValueError:
                continue
            if math.isfinite(value):
                values.append(value)
    return values


def create_app() -> FastAPI:
    app = FastAPI(title="fundval", version=__version__)

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"type": "input_error", "message": str(exc)}},
        )

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"detail": {"type": "domain_error", "message": str(exc)}},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/value", response_model=schemas.ValueResponse)
    async def value(req: schemas.ValueRequest):
        series, a, nfl, nci = _prepared_inputs(req.statements, req.assumptions, req.wacc, req.growth)
        results = {}
        for name in req.models:
            if name not in MODELS:
                raise InputError(f"unknown model {name!r}; expected one of {', '.join(sorted(MODELS))}")
            results[name] = MODELS[name](series, a, nfl=nfl, nci=nci, rounded_factors=req.rounded_factors)
        return valuation_payload(results)

    @app.post("/sensitivity", response_model=schemas.SensitivityResponse)
    async def sensitivity(req: schemas.SensitivityRequest):
        series, a, nfl, nci = _prepared_inputs(req.statements, req.assumptions)
        grid = sensitivity_grid(
            series,
            a,
            wacc_values=tuple(req.wacc_values),
            growth_values=tuple(req.growth_values),
            model=req.model,
            nfl=nfl,
            nci=nci,
            cross=req.cross,
        )
        return sensitivity_payload(grid)

    @app.post("/multiples", response_model=schemas.MultiplesResponse)
    async def multiples(req: schemas.MultiplesRequest):
        statements = parse_statements_file(req.statements)
        comparables = parse_comparables(req.comparables)
        balance, income = statements.base()
        drivers = {}
        for name in req.drivers:
            value = getattr(income, name, None)
            if value is None:
                raise InputError(f"statements do not report target driver {name!r}")
            drivers[name] = value
        result = run_comps(
            drivers,
            nfl=balance.net_financial_liabilities or 0.0,
            nci=balance.noncontrolling_interest or 0.0,
            shares=req.shares,
            comparables=comparables,
            drivers=tuple(req.drivers),
            methods=tuple(req.methods),
        )
        return multiples_payload(result)

    @app.post("/benford", response_model=schemas.BenfordResponse)
    async def benford(req: schemas.BenfordRequest):
        if (req.input is None) == (req.values is None):
            raise InputError("provide exactly one of 'input' (csv text) or 'values'")
        values = req.values if req.values is not None else _numeric_cells(req.input)
        return benford_payload(benford_screen(values, min_sample=req.min_sample))

    @app.post("/lim", response_model=schemas.LimResponse)
    async def lim(req: schemas.LimRequest):
        if req.model == "ohlson":
            params = OhlsonParams(omega1=req.omega1, gamma1=req.gamma1, rho_e=req.rho)
            a1, a2 = ohlson_coefficients(params)
            coefficients = {"alpha1": a1, "alpha2": a2}
            values = {"value": ohlson_value(req.book_value, req.residual_earnings, req.other_info, params)}
            if req.earnings is not None and req.dividend is not None:
                values["value_weighted"] = ohlson_value_weighted(
                    req.book_value, req.earnings, req.dividend, req.other_info, params
                )
        else:
            params = FelthamOhlsonParams(
                omega0=req.omega0,
                omega1=req.omega1,
                gamma1=req.gamma1,
                growth_factor=req.growth_factor,
                rho_f=req.rho,
            )
            a1, a2, a3 = fo_coefficients(params)
            coefficients = {"alpha1": a1, "alpha2": a2, "alpha3": a3}
            operations, total = fo_value(req.noa, req.residual_earnings, req.other_info, req.nfa, params)
            values = {"operations_value": operations, "total_value": total}
        return lim_payload(req.model, coefficients, values)

    @app.post("/reconcile", response_model=schemas.ReconcileResponse)
    async def reconcile(req: schemas.ReconcileRequest):
        return reconciliation_payload(build_report(req.fixture))

    return app
