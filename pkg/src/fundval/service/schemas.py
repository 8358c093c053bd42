"""Request and response models for the HTTP service.

Requests carry input files as their text contents, so the service needs no
shared filesystem with its clients. Responses mirror the render-layer
payload dicts one-to-one, including the "kind" discriminator the client
uses to pick a renderer.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

# --------------------------------------------------------------------------
# Requests.


class ValueRequest(BaseModel):
    statements: str = Field(description="statements file content (csv: period,item,value)")
    assumptions: str = Field(description="assumptions file content (key=value lines)")
    models: list[str] = Field(default=["fcfvm", "revm", "aegm"], min_length=1)
    wacc: float | None = None
    growth: float | None = None
    rounded_factors: bool = False


class SensitivityRequest(BaseModel):
    statements: str
    assumptions: str
    model: str = "fcfvm"
    wacc_values: list[float] = []
    growth_values: list[float] = []
    cross: bool = False


class MultiplesRequest(BaseModel):
    statements: str
    comparables: str = Field(description="comparables file content (csv: name,entity_value,ebit,sales)")
    drivers: list[str] = Field(default=["ebit", "sales"], min_length=1)
    methods: list[str] = Field(default=["median", "harmonic_mean"], min_length=1)
    shares: float | None = None


class BenfordRequest(BaseModel):
    input: str | None = Field(default=None, description="csv text; every numeric cell is screened")
    values: list[float] | None = None
    min_sample: int = 50


class LimRequest(BaseModel):
    model: Literal["ohlson", "feltham_ohlson"] = "ohlson"
    rho: float = Field(description="gross discount rate, e.g. 1.09")
    omega0: float = 0.0
    omega1: float = 0.0
    gamma1: float = 0.0
    growth_factor: float = 1.0
    book_value: float = 0.0
    residual_earnings: float = 0.0
    other_info: float = 0.0
    earnings: float | None = None
    dividend: float | None = None
    noa: float = 0.0
    nfa: float = 0.0


class ReconcileRequest(BaseModel):
    fixture: str = "ms"


# --------------------------------------------------------------------------
# Responses.


class ScheduleEntryModel(BaseModel):
    period: str
    flow: float
    discount_factor: float
    present_value: float


class ValuationModel(BaseModel):
    model: str
    discount_rate: float
    growth: float
    anchor: float
    schedule: list[ScheduleEntryModel]
    pv_explicit: float
    continuing_value: float
    pv_of_cv: float
    entity_value: float
    net_financial_liabilities: float
    noncontrolling_interest: float
    equity_value: float
    shares_outstanding: float | None
    per_share: float | None
    warnings: list[str]


class ValueResponse(BaseModel):
    kind: Literal["valuation"] = "valuation"
    results: dict[str, ValuationModel]


class GridCellModel(BaseModel):
    wacc: float
    growth: float
    axis: Literal["wacc", "growth", "cross"]
    valid: bool
    pv_explicit: float | None
    pv_of_cv: float | None
    entity_value: float | None
    equity_value: float | None
    pct_change_env: float | None
    pct_change_eqv: float | None
    note: str


class SensitivityResponse(BaseModel):
    kind: Literal["sensitivity"] = "sensitivity"
    model: str
    baseline_wacc: float
    baseline_growth: float
    baseline_entity_value: float
    baseline_equity_value: float
    wacc_values: list[float]
    growth_values: list[float]
    cross: bool
    cells: list[GridCellModel]


class CompsRowModel(BaseModel):
    driver: str
    method: str
    peer_multiples: list[float]
    computed_multiple: float
    multiple: float
    supplied: bool
    deviates: bool
    entity_value: float
    equity_value: float
    per_share: float | None


class MultiplesResponse(BaseModel):
    kind: Literal["multiples"] = "multiples"
    rows: list[CompsRowModel]
    nfl: float
    nci: float
    shares: float | None
    average_entity_value: float
    average_equity_value: float
    average_per_share: float | None


class BenfordResponse(BaseModel):
    kind: Literal["benford"] = "benford"
    n: int
    counts: list[int]
    observed: list[float]
    expected: list[float]
    chi2: float | None
    chi2_critical: float
    mad: float | None
    mad_threshold: float
    min_sample: int
    verdict: Literal["conforming", "nonconforming", "insufficient-sample"]


class LimResponse(BaseModel):
    kind: Literal["lim"] = "lim"
    model: str
    coefficients: dict[str, float]
    values: dict[str, float]


class ReconciliationRowModel(BaseModel):
    location: str
    printed: str
    printed_value: float
    recomputed: float
    abs_deviation: float
    rel_deviation: float | None
    classification: Literal["match", "rounding", "errata"]
    note: str


class ReconcileResponse(BaseModel):
    kind: Literal["reconciliation"] = "reconciliation"
    fixture: str
    rows: list[ReconciliationRowModel]
    n_match: int
    n_rounding: int
    n_errata: int


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str
