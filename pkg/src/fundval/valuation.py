"""Free-cash-flow construction and the three entity-valuation models.

The models share one skeleton: an anchor (zero for discounted cash flow,
opening NOA for residual operating income, capitalized first-period income
for abnormal income growth), a discounted explicit window, and a growing
perpetuity for the continuing value. On any series whose operating income
and net operating assets grow at one constant rate they give identical
entity values to machine precision, which the test-suite exploits
relentlessly.

Discounting uses exact (1+r)^t factors. A rounded-factor mode (factors cut
to 2 decimals) exists only so that reconciliation can replay reports that
were printed with rounded factors; nothing else should use it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InputError
from .forecast import Assumptions, FlowSeries
from .rounding import round_half_up

__all__ = [
    "DiscountSchedule",
    "ScheduleEntry",
    "ValuationResult",
    "fcf_method1",
    "fcf_method2",
    "continuing_value",
    "present_value",
    "value_fcfvm",
    "residual_operating_income",
    "residual_earnings",
    "roce",
    "value_revm",
    "aeg",
    "aoig",
    "value_aegm",
    "forward_pe_decomposition",
    "equity_bridge",
]


@dataclass(frozen=True)
class DiscountSchedule:
    """Discount factors (1+r)^t for t = 1..horizon."""

    rate: float
    factors: tuple[float, ...]

    @classmethod
    def build(cls, rate: float, horizon: int, rounded: bool = False) -> "DiscountSchedule":
        """Build factors by cumulative multiplication (factor_t = factor_{t-1}*(1+r)).

        Args:
            rate: net discount rate; must exceed -100%.
            horizon: number of periods (>= 0).
            rounded: cut each factor to 2 decimals (half-up). Reconciliation
                use only.
        """
        if not math.isfinite(rate) or rate <= -1.0:
            raise DomainError(f"discount rate must be a finite value above -100%, got {rate}")
        if horizon < 0:
            raise DomainError(f"horizon must be >= 0, got {horizon}")
        factors = []
        f = 1.0
        for _ in range(horizon):
            f *= 1.0 + rate
            factors.append(round_half_up(f, 2) if rounded else f)
        return cls(rate=rate, factors=tuple(factors))

    def factor(self, t: int) -> float:
        """Factor for period t (1-based)."""
        return self.factors[t - 1]


@dataclass(frozen=True)
class ScheduleEntry:
    """One explicit-window period: the flow, its factor, its present value."""

    period: str
    flow: float
    discount_factor: float
    present_value: float


@dataclass(frozen=True)
class ValuationResult:
    """Entity valuation with its decomposition and the equity bridge.

    Invariant: entity_value = anchor + pv_explicit + pv_of_cv, where the
    anchor is 0.0 (FCFVM), opening NOA (REVM) or capitalized first-period
    income (AEGM).
    """

    model: str
    discount_rate: float
    growth: float
    anchor: float
    schedule: tuple[ScheduleEntry, ...]
    pv_explicit: float
    continuing_value: float
    pv_of_cv: float
    entity_value: float
    net_financial_liabilities: float
    noncontrolling_interest: float
    equity_value: float
    shares_outstanding: float | None
    per_share: float | None
    warnings: tuple[str, ...]


def fcf_method1(oi_t: float, noa_prev: float, noa_t: float) -> float:
    """Free cash flow as operating income minus the change in NOA."""
    return oi_t - (noa_t - noa_prev)


def fcf_method2(
    oi_t: float,
    d_receivables: float,
    d_inventories: float,
    d_payables: float,
    d_other_noa: float,
    depreciation: float,
    capex: float,
) -> float:
    """Free cash flow built from working-capital deltas and the PP&E rollforward.

    All deltas are current-minus-prior on the signed balance-sheet items
    (so a growing payables balance contributes a negative delta, releasing
    cash). Equals ``fcf_method1`` on any internally consistent sheet:
    OI - change in working capital - (capex - depreciation) - change in
    other net operating assets.
    """
    d_working_capital = d_receivables + d_inventories + d_payables
    return oi_t - d_working_capital - (capex - depreciation) - d_other_noa


def continuing_value(flow_t: float, g: float, r: float) -> float:
    """Growing-perpetuity continuing value flow_T*(1+g)/(r-g).

    Values the post-horizon stream as of the terminal period.

    Raises:
        DomainError: when r <= g (the perpetuity diverges) or r <= -100%.
    """
    if not math.isfinite(r) or r <= -1.0:
        raise DomainError(f"discount rate must be a finite value above -100%, got {r}")
    if r <= g:
        raise DomainError(
            f"continuing value requires the discount rate to exceed growth: rate {r} <= growth {g}"
        )
    return flow_t * (1.0 + g) / (r - g)


def present_value(flows, r: float, schedule: DiscountSchedule | None = None):
    """Discount flows indexed t = 1..T at exact factors.

    Args:
        flows: sequence of per-period flows, first entry one period out.
        r: net discount rate.
        schedule: optional prebuilt schedule (must cover len(flows)).

    Returns:
        (total present value, DiscountSchedule used).
    """
    flows = tuple(flows)
    if schedule is None:
        schedule = DiscountSchedule.build(r, len(flows))
    total = math.fsum(flow / schedule.factor(t) for t, flow in enumerate(flows, start=1))
    return total, schedule


def residual_operating_income(oi_t: float, noa_prev: float, wacc: float) -> float:
    """Operating income minus a capital charge on opening NOA."""
    return oi_t - wacc * noa_prev


def residual_earnings(earn_t: float, b_prev: float, equity_cost: float) -> float:
    """Earnings minus an equity-cost charge on opening book value."""
    return earn_t - equity_cost * b_prev


def roce(earn_t: float, b_prev: float) -> float:
    """Return on common equity, earnings over opening book value.

    Raises:
        DomainError: when opening book value is zero.
    """
    if b_prev == 0:
        raise DomainError("return on common equity is undefined on a zero opening book value")
    return earn_t / b_prev


def aeg(earn_t: float, earn_prev: float, div_prev: float, equity_cost: float) -> float:
    """Abnormal earnings growth: earnings change minus a normal return on retention."""
    return (earn_t - earn_prev) - equity_cost * (earn_prev - div_prev)


def aoig(oi_t: float, oi_prev: float, fcf_prev: float, wacc: float) -> float:
    """Abnormal operating income growth: OI change minus a normal return on reinvested OI."""
    return (oi_t - oi_prev) - wacc * (oi_prev - fcf_prev)


def equity_bridge(env: float, nfl: float, nci: float, shares: float | None = None):
    """Entity value to equity value to per-share value.

    Args:
        env: entity value.
        nfl: net financial liabilities (positive = net debt).
        nci: non-controlling interest.
        shares: share count in millions; omit to skip the per-share step.

    Returns:
        (equity_value, per_share) with per_share None when shares is None.

    Raises:
        DomainError: on a non-positive share count.
    """
    eqv = env - nfl - nci
    if shares is None:
        return eqv, None
    if shares <= 0:
        raise DomainError(f"share count must be positive, got {shares}")
    return eqv, eqv / shares


def _series_window(series: FlowSeries, a: Assumptions) -> int:
    if series.horizon < a.horizon:
        raise InputError(
            f"assumptions ask for a {a.horizon}-period horizon but the series has {series.horizon}"
        )
    return a.horizon


def _cv_warnings(terminal_flow: float, model: str) -> list[str]:
    if terminal_flow < 0:
        return [
            f"{model}: continuing value is anchored on a negative terminal flow "
            f"({terminal_flow:.6g}); treat the perpetuity with suspicion"
        ]
    return []


def _finish(
    model: str,
    a: Assumptions,
    rate: float,
    anchor: float,
    schedule_rows: tuple[ScheduleEntry, ...],
    cv: float,
    pv_of_cv: float,
    nfl: float,
    nci: float,
    warnings: list[str],
) -> ValuationResult:
    pv_explicit = math.fsum(row.present_value for row in schedule_rows)
    env = anchor + pv_explicit + pv_of_cv
    eqv, per_share = equity_bridge(env, nfl, nci, a.shares_outstanding)
    return ValuationResult(
        model=model,
        discount_rate=rate,
        growth=a.sales_growth,
        anchor=anchor,
        schedule=schedule_rows,
        pv_explicit=pv_explicit,
        continuing_value=cv,
        pv_of_cv=pv_of_cv,
        entity_value=env,
        net_financial_liabilities=nfl,
        noncontrolling_interest=nci,
        equity_value=eqv,
        shares_outstanding=a.shares_outstanding,
        per_share=per_share,
        warnings=tuple(warnings),
    )


def value_fcfvm(
    series: FlowSeries,
    a: Assumptions,
    nfl: float = 0.0,
    nci: float = 0.0,
    rounded_factors: bool = False,
) -> ValuationResult:
    """Discounted free cash flow entity valuation.

    EnV = sum of discounted FCF over the horizon plus the discounted
    continuing value of the terminal FCF. FCF comes from the OI/NOA series
    (method 1).
    """
    T = _series_window(series, a)
    r, g = a.wacc, a.sales_growth
    fcf = series.free_cash_flow()[:T]
    schedule = DiscountSchedule.build(r, T, rounded=rounded_factors)
    rows = tuple(
        ScheduleEntry(series.labels[t], fcf[t - 1], schedule.factor(t), fcf[t - 1] / schedule.factor(t))
        for t in range(1, T + 1)
    )
    warnings = []
    negatives = [series.labels[t] for t in range(1, T + 1) if fcf[t - 1] < 0]
    if negatives:
        warnings.append(
            "fcfvm: negative free cash flow in " + ", ".join(negatives)
            + "; the model stands but negative flows make it fragile"
        )
    cv = continuing_value(fcf[-1], g, r)
    warnings += _cv_warnings(fcf[-1], "fcfvm")
    pv_of_cv = cv / schedule.factor(T)
    return _finish("fcfvm", a, r, 0.0, rows, cv, pv_of_cv, nfl, nci, warnings)


def value_revm(
    series: FlowSeries,
    a: Assumptions,
    nfl: float = 0.0,
    nci: float = 0.0,
    rounded_factors: bool = False,
) -> ValuationResult:
    """Residual-operating-income entity valuation.

    EnV = opening NOA plus discounted residual operating income plus the
    discounted continuing value of the terminal residual. With zero
    residuals forever the value collapses to opening NOA.
    """
    T = _series_window(series, a)
    r, g = a.wacc, a.sales_growth
    oi, noa = series.operating_income, series.net_operating_assets
    residuals = tuple(residual_operating_income(oi[t], noa[t - 1], r) for t in range(1, T + 1))
    schedule = DiscountSchedule.build(r, T, rounded=rounded_factors)
    rows = tuple(
        ScheduleEntry(series.labels[t], residuals[t - 1], schedule.factor(t),
                      residuals[t - 1] / schedule.factor(t))
        for t in range(1, T + 1)
    )
    cv = continuing_value(residuals[-1], g, r)
    warnings = _cv_warnings(residuals[-1], "revm")
    pv_of_cv = cv / schedule.factor(T)
    return _finish("revm", a, r, noa[0], rows, cv, pv_of_cv, nfl, nci, warnings)


def value_aegm(
    series: FlowSeries,
    a: Assumptions,
    perspective: str = "entity",
    nfl: float = 0.0,
    nci: float = 0.0,
    rounded_factors: bool = False,
) -> ValuationResult:
    """Abnormal-income-growth valuation, entity or equity perspective.

    Entity: EnV = OI_1/r + sum over t = 1..T-1 of capitalized abnormal
    operating income growth AOIG_{t+1}/r discounted t periods, plus the
    continuing value of the capitalized-growth stream (attached at T-1).
    Equity: the same structure over comprehensive earnings, dividends and
    the equity cost.

    With horizon 1 there is no in-sample growth term; the continuing value
    extrapolates the first post-horizon term using the assumed growth rate
    and attaches at the valuation date.
    """
    T = _series_window(series, a)
    g = a.sales_growth
    if perspective == "entity":
        r = a.wacc
        flows = series.operating_income
        payouts = (None,) + series.free_cash_flow()  # align payout index with flow index
        abnormal = aoig
    elif perspective == "equity":
        if a.equity_cost is None:
            raise InputError("equity-perspective valuation requires equity_cost")
        if series.earnings is None or series.dividends is None:
            raise InputError("equity-perspective valuation requires earnings and dividends series")
        r = a.equity_cost
        flows = series.earnings
        payouts = series.dividends
        abnormal = aeg
    else:
        raise InputError(f"perspective must be 'entity' or 'equity', got {perspective!r}")

    if r <= 0:
        raise DomainError(f"cannot capitalize income at a non-positive rate, got {r}")
    anchor = flows[1] / r
    schedule = DiscountSchedule.build(r, T, rounded=rounded_factors)

    if T == 1:
        # No in-sample growth term; extrapolate one step at the assumed rate.
        if r <= g:
            raise DomainError(
                f"continuing value requires the discount rate to exceed growth: rate {r} <= growth {g}"
            )
        next_abnormal = abnormal(flows[1] * (1.0 + g), flows[1], payouts[1], r)
        cv = (next_abnormal / r) / (r - g)  # value at t=0 of the stream starting t=1
        rows: tuple[ScheduleEntry, ...] = ()
        warnings = _cv_warnings(next_abnormal, "aegm")
        return _finish("aegm", a, r, anchor, rows, cv, cv, nfl, nci, warnings)

    capitalized = []
    for t in range(1, T):
        growth_term = abnormal(flows[t + 1], flows[t], payouts[t], r)
        capitalized.append(growth_term / r)
    rows = tuple(
        ScheduleEntry(series.labels[t], capitalized[t - 1], schedule.factor(t),
                      capitalized[t - 1] / schedule.factor(t))
        for t in range(1, T)
    )
    cv = continuing_value(capitalized[-1], g, r)
    warnings = _cv_warnings(capitalized[-1], "aegm")
    pv_of_cv = cv / schedule.factor(T - 1)
    return _finish("aegm", a, r, anchor, rows, cv, pv_of_cv, nfl, nci, warnings)


def forward_pe_decomposition(result: ValuationResult, earn_1: float, equity_cost: float):
    """Split value/forward-earnings into the capitalization term and the growth premium.

    V/Earn_1 = 1/equity_cost + premium, where the premium collects the
    discounted capitalized abnormal-growth terms per unit of forward
    earnings.

    Raises:
        DomainError: zero forward earnings or non-positive equity cost.
    """
    if earn_1 == 0:
        raise DomainError("forward price-earnings decomposition is undefined on zero forward earnings")
    if equity_cost <= 0:
        raise DomainError(f"equity cost must be positive, got {equity_cost}")
    capitalization = 1.0 / equity_cost
    premium = result.entity_value / earn_1 - capitalization
    return capitalization, premium
