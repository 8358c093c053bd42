"""Reformulated financial statements: data model, CSV ingestion, validation.

Input files are long-format CSV with header ``period,item,value``. Each row
assigns one item to one period. The item vocabulary is fixed (see
``ITEM_FIELDS``); unknown items are rejected outright because a silently
dropped row would corrupt net operating assets. Liability-side working
capital items (trade payables, current tax liabilities) are stored as the
negative numbers they are on a reformulated sheet, which keeps working
capital and NOA plain sums.

Amounts are double-precision floats in millions of one currency. Display
rounding is a rendering concern; nothing here rounds.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields

from .errors import ParseError

__all__ = [
    "PeriodId",
    "BalanceSheet",
    "IncomeStatement",
    "StatementSet",
    "CleanSurplusCheck",
    "parse_statements_file",
    "serialize_statements",
    "working_capital",
    "net_operating_assets",
    "check_clean_surplus",
]


@dataclass(frozen=True)
class PeriodId:
    """A reporting period: human label plus offset from the valuation date.

    Index 0 is the base year; 1..T are forecast years. Indices are assigned
    by order of first appearance in the input file.
    """

    label: str
    index: int


@dataclass(frozen=True)
class BalanceSheet:
    """Operating/financial-split balance sheet items for one period.

    Payables and tax liabilities carry their natural negative sign.
    ``net_financial_liabilities`` >= 0 means net debt. Items that the input
    file may omit are ``None`` when absent, never silently zero.
    """

    inventories: float = 0.0
    trade_receivables: float = 0.0
    current_tax_receivable: float = 0.0
    trade_payables: float = 0.0
    current_tax_liabilities: float = 0.0
    ppe_and_intangibles: float = 0.0
    other_net_operating_assets: float = 0.0
    net_financial_liabilities: float | None = None
    noncontrolling_interest: float | None = None
    common_equity: float | None = None
    dividends_paid: float | None = None


@dataclass(frozen=True)
class IncomeStatement:
    """Income items for one period.

    ``operating_income`` is after tax and includes other comprehensive
    income items; it may be negative.
    """

    operating_income: float = 0.0
    sales: float | None = None
    ebit: float | None = None
    comprehensive_earnings: float | None = None


# CSV item name -> (target dataclass, field name, required?)
ITEM_FIELDS: dict[str, tuple[str, str, bool]] = {
    "sales": ("income", "sales", False),
    "ebit": ("income", "ebit", False),
    "operating_income": ("income", "operating_income", True),
    "comprehensive_earnings": ("income", "comprehensive_earnings", False),
    "inventories": ("balance", "inventories", True),
    "trade_receivables": ("balance", "trade_receivables", True),
    "current_tax_receivable": ("balance", "current_tax_receivable", True),
    "trade_payables": ("balance", "trade_payables", True),
    "current_tax_liabilities": ("balance", "current_tax_liabilities", True),
    "ppe_intangibles": ("balance", "ppe_and_intangibles", True),
    "other_net_operating_assets": ("balance", "other_net_operating_assets", True),
    "net_financial_liabilities": ("balance", "net_financial_liabilities", False),
    "noncontrolling_interest": ("balance", "noncontrolling_interest", False),
    "common_equity": ("balance", "common_equity", False),
    "dividends": ("balance", "dividends_paid", False),
}

REQUIRED_ITEMS = tuple(name for name, (_, _, req) in ITEM_FIELDS.items() if req)

_HEADER = ("period", "item", "value")


@dataclass(frozen=True)
class StatementSet:
    """Ordered collection of (balance sheet, income statement) per period."""

    periods: tuple[PeriodId, ...]
    balance_sheets: tuple[BalanceSheet, ...]
    income_statements: tuple[IncomeStatement, ...]

    def __post_init__(self):
        if not (len(self.periods) == len(self.balance_sheets) == len(self.income_statements)):
            raise ValueError("periods and statements must align")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.periods)

    def base(self) -> tuple[BalanceSheet, IncomeStatement]:
        """The index-0 (valuation date) statements."""
        return self.balance_sheets[0], self.income_statements[0]

    def period_index(self, label: str) -> int:
        for p in self.periods:
            if p.label == label:
                return p.index
        raise KeyError(label)

    def balance(self, label: str) -> BalanceSheet:
        return self.balance_sheets[self.period_index(label)]

    def income(self, label: str) -> IncomeStatement:
        return self.income_statements[self.period_index(label)]


def parse_statements_file(text) -> StatementSet:
    """Parse a ``period,item,value`` CSV stream into a StatementSet.

    Args:
        text: the file content as a string, or a readable text stream.

    Returns:
        A validated StatementSet. Periods are indexed 0..n-1 in order of
        first appearance.

    Raises:
        ParseError: malformed header or row (with line number), unknown
            item, duplicate (period, item) pair, non-numeric or non-finite
            value, no periods at all, or a period missing required items.
    """
    if hasattr(text, "read"):
        text = text.read()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("no periods: file is empty")
    header = tuple(c.strip().lower() for c in rows[0])
    if header != _HEADER:
        raise ParseError(f"expected header 'period,item,value', got {','.join(rows[0])!r}", line=1)

    order: list[str] = []
    values: dict[tuple[str, str], float] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=lineno)
        period, item, raw = (c.strip() for c in row)
        if not period:
            raise ParseError("empty period label", line=lineno)
        if item not in ITEM_FIELDS:
            raise ParseError(f"unknown item {item!r}", line=lineno)
        try:
            value = float(raw)
        except ValueError:
            raise ParseError(f"non-numeric value {raw!r} for {item}", line=lineno) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite value {raw!r} for {item}", line=lineno)
        if (period, item) in values:
            raise ParseError(f"duplicate entry for ({period}, {item})", line=lineno)
        if period not in order:
            order.append(period)
        values[(period, item)] = value

    if not order:
        raise ParseError("no periods: file has a header but no data rows")

    periods = []
    balances = []
    incomes = []
    for index, label in enumerate(order):
        missing = [i for i in REQUIRED_ITEMS if (label, i) not in values]
        if missing:
            raise ParseError(f"period {label!r} is missing required items: {', '.join(missing)}")
        bal_kwargs: dict[str, float] = {}
        inc_kwargs: dict[str, float] = {}
        for item, (target, field, _req) in ITEM_FIELDS.items():
            if (label, item) in values:
                (bal_kwargs if target == "balance" else inc_kwargs)[field] = values[(label, item)]
        periods.append(PeriodId(label=label, index=index))
        balances.append(BalanceSheet(**bal_kwargs))
        incomes.append(IncomeStatement(**inc_kwargs))
    return StatementSet(tuple(periods), tuple(balances), tuple(incomes))


def serialize_statements(ss: StatementSet) -> str:
    """Inverse of parse_statements_file; omits absent optional items.

    Floats are written with repr precision so parse -> serialize -> parse
    reproduces an identical StatementSet.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_HEADER)
    for period in ss.periods:
        bal = ss.balance_sheets[period.index]
        inc = ss.income_statements[period.index]
        for item, (target, field, _req) in ITEM_FIELDS.items():
            value = getattr(bal if target == "balance" else inc, field)
            if value is not None:
                writer.writerow([period.label, item, repr(value)])
    return out.getvalue()


def working_capital(bs: BalanceSheet) -> float:
    """Inventories + receivables + tax receivable + payables + tax liabilities.

    The liability items are already negative, so this is a plain sum.
    """
    return math.fsum(
        (
            bs.inventories,
            bs.trade_receivables,
            bs.current_tax_receivable,
            bs.trade_payables,
            bs.current_tax_liabilities,
        )
    )


def net_operating_assets(bs: BalanceSheet) -> float:
    """Working capital + PP&E/intangibles + other net operating assets."""
    return math.fsum(
        (working_capital(bs), bs.ppe_and_intangibles, bs.other_net_operating_assets)
    )


@dataclass(frozen=True)
class CleanSurplusCheck:
    """Outcome of a clean-surplus test; a violation is a value, not an error."""

    ok: bool
    residual: float
    tolerance: float


def check_clean_surplus(
    b_prev: float, earn: float, div: float, b_cur: float, tolerance: float = 1e-6
) -> CleanSurplusCheck:
    """Test the clean surplus relation B_t = B_{t-1} + Earn_t - d_t.

    Args:
        b_prev: opening book value.
        earn: comprehensive earnings for the period.
        div: net dividends for the period.
        b_cur: closing book value.
        tolerance: absolute tolerance on the residual.

    Returns:
        CleanSurplusCheck with residual = b_prev + earn - div - b_cur;
        ``ok`` iff |residual| <= tolerance.
    """
    residual = b_prev + earn - div - b_cur
    return CleanSurplusCheck(ok=abs(residual) <= tolerance, residual=residual, tolerance=tolerance)
