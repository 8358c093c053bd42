"""Projection of base-year statements under constant-growth driver assumptions.

The projection is deliberately simple: sales and net operating assets grow
proportionally at one rate, and operating income grows at the same rate from
an explicit first-forecast anchor. Everything is computed at full precision;
two-decimal presentation is the renderer's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InputError, ParseError
from .statements import StatementSet, net_operating_assets

__all__ = ["Assumptions", "FlowSeries", "grow", "ppe_rollforward", "project_flows", "parse_assumptions"]


@dataclass(frozen=True)
class Assumptions:
    """Valuation drivers.

    ``wacc`` and ``equity_cost`` are net annual rates (gross factor minus
    one). ``oi_anchor`` is the first forecast period's operating income;
    when absent the projection uses base OI grown one period. ``tax_rate``
    and ``profit_margin`` ride along as report metadata only.
    """

    sales_growth: float
    wacc: float
    horizon: int
    equity_cost: float | None = None
    tax_rate: float | None = None
    profit_margin: float | None = None
    shares_outstanding: float | None = None
    oi_anchor: float | None = None

    def __post_init__(self):
        if not isinstance(self.horizon, int) or self.horizon < 1:
            raise InputError(f"horizon must be an integer >= 1, got {self.horizon!r}")
        for name in ("sales_growth", "wacc", "equity_cost", "tax_rate",
                     "profit_margin", "shares_outstanding", "oi_anchor"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise InputError(f"{name} must be finite, got {value!r}")
        if self.wacc <= -1.0:
            raise InputError(f"wacc must exceed -100%, got {self.wacc}")
        if self.equity_cost is not None and self.equity_cost <= -1.0:
            raise InputError(f"equity_cost must exceed -100%, got {self.equity_cost}")

    def with_rates(self, wacc: float | None = None, sales_growth: float | None = None) -> "Assumptions":
        """Copy with a different discount rate and/or growth rate."""
        changes = {}
        if wacc is not None:
            changes["wacc"] = wacc
        if sales_growth is not None:
            changes["sales_growth"] = sales_growth
        return replace(self, **changes)


@dataclass(frozen=True)
class FlowSeries:
    """Aligned per-period value series; index 0 is the base year.

    Operating income and net operating assets are always present (the
    entity-perspective models need them); the equity-perspective trio is
    optional.
    """

    labels: tuple[str, ...]
    operating_income: tuple[float, ...]
    net_operating_assets: tuple[float, ...]
    sales: tuple[float, ...] | None = None
    earnings: tuple[float, ...] | None = None
    book_value: tuple[float, ...] | None = None
    dividends: tuple[float, ...] | None = None

    def __post_init__(self):
        n = len(self.labels)
        if n < 2:
            raise InputError("a flow series needs a base period plus at least one forecast period")
        for name in ("operating_income", "net_operating_assets", "sales",
                     "earnings", "book_value", "dividends"):
            seq = getattr(self, name)
            if seq is not None and len(seq) != n:
                raise InputError(f"{name} has {len(seq)} entries for {n} periods")

    @property
    def horizon(self) -> int:
        return len(self.labels) - 1

    def free_cash_flow(self) -> tuple[float, ...]:
        """FCF_t = OI_t - change in NOA, for t = 1..horizon."""
        oi, noa = self.operating_income, self.net_operating_assets
        return tuple(oi[t] - (noa[t] - noa[t - 1]) for t in range(1, len(oi)))


def grow(value: float, g: float, n: int) -> float:
    """value * (1+g)^n, the constant-growth projector.

    Raises:
        InputError: if n is negative.
    """
    if n < 0:
        raise InputError(f"growth exponent must be >= 0, got {n}")
    return value * (1.0 + g) ** n


def ppe_rollforward(brought: float, additions: float, depreciation: float) -> float:
    """Carried amount = brought forward + additions - depreciation."""
    return brought + additions - depreciation


def _forecast_labels(base_label: str, horizon: int) -> tuple[str, ...]:
    # Year-like labels get the conventional nnnnE forecast tags.
    try:
        year = int(base_label)
    except ValueError:
        return tuple(f"{base_label}+{t}" for t in range(1, horizon + 1))
    return tuple(f"{year + t}E" for t in range(1, horizon + 1))


def project_flows(base: StatementSet, a: Assumptions) -> FlowSeries:
    """Project the index-0 period forward for ``a.horizon`` years.

    Sales and NOA grow at ``a.sales_growth``; operating income follows
    OI_t = anchor * (1+g)^(t-1) with anchor = ``a.oi_anchor`` or, by
    default, base OI grown one period.

    Args:
        base: statements holding the index-0 period.
        a: driver assumptions.

    Returns:
        A FlowSeries of length horizon + 1 (base + forecasts).
    """
    bs, inc = base.base()
    g = a.sales_growth
    t_range = range(1, a.horizon + 1)

    noa0 = net_operating_assets(bs)
    noa = (noa0,) + tuple(grow(noa0, g, t) for t in t_range)

    anchor = a.oi_anchor if a.oi_anchor is not None else grow(inc.operating_income, g, 1)
    oi = (inc.operating_income,) + tuple(grow(anchor, g, t - 1) for t in t_range)

    sales = None
    if inc.sales is not None:
        sales = (inc.sales,) + tuple(grow(inc.sales, g, t) for t in t_range)

    labels = (base.periods[0].label,) + _forecast_labels(base.periods[0].label, a.horizon)
    return FlowSeries(labels=labels, operating_income=oi, net_operating_assets=noa, sales=sales)


_ASSUMPTION_KEYS = {
    "growth": ("sales_growth", float),
    "wacc": ("wacc", float),
    "equity_cost": ("equity_cost", float),
    "horizon": ("horizon", int),
    "tax_rate": ("tax_rate", float),
    "profit_margin": ("profit_margin", float),
    "shares": ("shares_outstanding", float),
    "oi_anchor": ("oi_anchor", float),
}

_REQUIRED_KEYS = ("growth", "wacc", "horizon")


def parse_assumptions(text) -> Assumptions:
    """Parse a ``key=value`` assumptions file.

    Rates are decimals (0.02 means 2%), horizon is an integer. ``#`` starts
    a comment. Required keys: growth, wacc, horizon.

    Raises:
        ParseError: unknown or duplicate key, bad value, or a missing
            required key.
    """
    if hasattr(text, "read"):
        text = text.read()
    seen: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", line=lineno)
        key, _, raw_value = (part.strip() for part in line.partition("="))
        if key not in _ASSUMPTION_KEYS:
            raise ParseError(f"unknown assumption key {key!r}", line=lineno)
        if key in seen:
            raise ParseError(f"duplicate assumption key {key!r}", line=lineno)
        field, cast = _ASSUMPTION_KEYS[key]
        try:
            seen[key] = cast(raw_value)
        except ValueError:
            raise ParseError(f"bad value {raw_value!r} for {key}", line=lineno) from None
    missing = [k for k in _REQUIRED_KEYS if k not in seen]
    if missing:
        raise ParseError(f"missing required assumption keys: {', '.join(missing)}")
    kwargs = {_ASSUMPTION_KEYS[k][0]: v for k, v in seen.items()}
    return Assumptions(**kwargs)
