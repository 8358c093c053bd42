"""Bundled worked example: a UK retailer valued as of its 2016 year end.

Ships three data files (statements, assumptions, peer multiples) plus the
published workbook figures those files came from, so the reconciliation
command can replay every published row offline and classify it as match,
rounding, or errata. All published figures are kept verbatim as strings;
trailing precision differences (one cell to one decimal, two to none) are
meaningful to the classifier.

The published workbook carries two period-0 net-operating-asset levels:
the balance-sheet components sum to 5192.00, while the valuation blocks
run off a separately stated 5353.70 series. ``ms_flow_series`` returns the
5353.70 series because the published free-cash-flow and residual-income
rows reproduce from it exactly; the statements file carries the component
detail. The reconciliation report documents the gap rather than hiding it.
"""

from __future__ import annotations

from importlib.resources import files

from .forecast import Assumptions, FlowSeries, parse_assumptions
from .multiples import Comparable, parse_comparables
from .statements import StatementSet, parse_statements_file

__all__ = [
    "FIXTURE_IDS",
    "MS_EBIT",
    "MS_NCI",
    "MS_NFL",
    "MS_SALES",
    "MS_SHARES_COMPS",
    "MS_SHARES_STATED",
    "MS_SUPPLIED_MULTIPLES",
    "PRINTED",
    "ms_assumptions",
    "ms_comparables",
    "ms_flow_series",
    "ms_statement_set",
    "ms_statement_values",
]

FIXTURE_IDS = ("ms",)

MS_NFL = 1762.40
MS_NCI = 11.40
MS_SHARES_STATED = 1635.90   # share count stated with the forecast assumptions
MS_SHARES_COMPS = 1605.51    # share count used in the published peer-multiple table
MS_EBIT = 746.50
MS_SALES = 9934.30

# Central multiples exactly as published, keyed by (driver, method). The
# published "harmonic mean" figures do not equal the harmonic means of the
# published peer multiples; run_comps flags that deviation.
MS_SUPPLIED_MULTIPLES = {
    ("ebit", "median"): 10.8,
    ("ebit", "harmonic_mean"): 10.53,
    ("sales", "median"): 0.8,
    ("sales", "harmonic_mean"): 0.77,
}


def _read(name: str) -> str:
    return files("fundval.data").joinpath(name).read_text(encoding="utf-8")


def ms_statement_set() -> StatementSet:
    """The 2016 reformulated statements (single actual period)."""
    return parse_statements_file(_read("ms_statements.csv"))


def ms_assumptions() -> Assumptions:
    """Growth 2%, cost of capital 7%, five-year horizon, pinned first OI."""
    return parse_assumptions(_read("ms_assumptions.txt"))


def ms_comparables() -> tuple[Comparable, ...]:
    """Two peers whose driver columns are multiples taken as given."""
    return parse_comparables(_read("ms_comparables.csv"))


def ms_flow_series() -> FlowSeries:
    """The published operative flow series (two-decimal rows, as printed)."""
    return FlowSeries(
        labels=("2016", "2017E", "2018E", "2019E", "2020E", "2021E"),
        operating_income=(483.20, 446.84, 455.77, 464.89, 474.19, 483.67),
        net_operating_assets=(5353.70, 5460.77, 5569.99, 5681.39, 5795.02, 5910.92),
    )


def ms_statement_values() -> tuple[float, ...]:
    """Every numeric amount in the bundled statements (for digit screening)."""
    ss = ms_statement_set()
    values = []
    for bs, inc in zip(ss.balance_sheets, ss.income_statements):
        for record in (bs, inc):
            for value in vars(record).values():
                if isinstance(value, float):
                    values.append(value)
    return tuple(values)


# --------------------------------------------------------------------------
# Published workbook figures, verbatim. Keys name the workbook row; values
# are per-period printed strings ("" where the cell is blank).

FORECAST_LABELS = ("2016", "2017E", "2018E", "2019E", "2020E", "2021E")

PRINTED_PROJECTION = {
    "operating_income": ("483.20", "446.84", "455.77", "464.89", "474.19", "483.67"),
    "inventories": ("799.90", "815.90", "832.22", "848.86", "865.84", "883.15"),
    "trade_receivables": ("321.10", "327.52", "334.07", "340.75", "347.57", "354.52"),
    "current_tax_receivable": ("1.60", "1.63", "1.66", "1.70", "1.73", "1.77"),
    "trade_payables": ("-1617.70", "-1650.05", "-1683.06", "-1716.72", "-1751.0", "-1786.07"),
    "current_tax_liabilities": ("-75.20", "-76.70", "-78.24", "-79.80", "-81.40", "-83.03"),
    "working_capital": ("-570.30", "-505", "-593.35", "-641.14", "-617.31", "-629.66"),
    "ppe_and_intangibles": ("5829.90", "5946.50", "6065.43", "6186.74", "6310.47", "6436.68"),
    "other_net_operating_assets": ("-67.60", "-68.95", "-70.33", "-71.74", "-73.17", "-74.64"),
    "net_operating_assets": ("5192", "5372.55", "5401.75", "5473.86", "5619.99", "5732.38"),
}

PRINTED_MOVEMENT = {
    "brought_forward": ("5889.30", "5829.90", "5946.50", "6065.43", "6186.74", "6310.47"),
    "additions": ("503.40", "513.47", "523.74", "534.21", "544.90", "555.79"),
    # The period-0 cell is printed as a deduction, the forecast cells are not.
    "depreciation": ("-562.80", "396.87", "404.81", "412.90", "421.16", "429.58"),
    "carried_forward": ("5829.30", "5946.50", "6065.43", "6186.74", "6310.47", "6436.68"),
}

# Free-cash-flow build-up from individual item changes (forecast years only).
PRINTED_METHOD2 = {
    "receivables_increase": ("-6.42", "-6.55", "-6.68", "-6.82", "-6.95"),
    "inventories_increase": ("-16.00", "-16.32", "-16.64", "-16.98", "-17.31"),
    "payables_increase": ("32.35", "33.01", "33.66", "34.33", "35.02"),
    "other_noa_increase": ("1.35", "1.38", "1.41", "1.43", "1.47"),
    "depreciation": ("396.87", "404.81", "412.90", "421.16", "429.58"),
    "additions": ("-818.86", "-835.23", "-851.94", "-868.98", "-886.36"),
    "free_cash_flow": ("339.77", "346.55", "353.49", "360.56", "367.77"),
}

# Free-cash-flow as operating income less the change in net operating assets.
PRINTED_METHOD1 = {
    "noa_change": ("-107.07", "-109.22", "-111.40", "-113.63", "-115.90"),
    "free_cash_flow": ("339.77", "346.55", "353.49", "360.56", "367.77"),
}

PRINTED_FCFVM = {
    "free_cash_flow": ("339.77", "346.55", "353.49", "360.56", "367.77"),
    "discount_factor": ("1.07", "1.14", "1.23", "1.31", "1.40"),
    "pv": ("317.54", "303.99", "287.39", "275.24", "262.69"),
    "pv_total": "1446.85",
    "cv": "7501.51",          # published as 367.77 * 1.02 / 0.05
    "pv_of_cv": "5358.22",
    "entity_value": "6945.31",
}

PRINTED_REVM = {
    "net_operating_assets": ("5353.70", "5460.77", "5569.99", "5681.39", "5795.02", "5910.92"),
    "capital_charge": ("374.76", "382.25", "389.90", "397.70", "405.65"),
    "roi": ("72.08", "73.52", "74.99", "76.49", "78.02"),
    "pv": ("67.36", "64.50", "60.97", "58.39", "55.73"),
    "pv_total": "306.95",
    "cv": "1591.61",          # published as 78.02 * 1.02 / 0.05
    "pv_of_cv": "1284.66",
    "entity_value": "6945.31",
}

PRINTED_AEGM = {
    # First four forecast years carry the capitalised rows; the growth rows
    # start one year later.
    "reinvested": ("107.07", "109.22", "111.40", "113.63"),
    "normal_change": ("6.26", "6.37", "6.53", "6.68"),
    "oi_change": ("8.93", "9.12", "9.3", "9.48"),
    "aoig": ("2.67", "2.75", "2.77", "2.8"),
    "capitalized": ("44.82", "45.71", "46.63", "47.56"),
    "pv_capitalized": ("41.89", "40.10", "37.91", "36.31"),
    "pv_total": "180.23",
    "cv": "1119.80",          # published as 3.84 * 1.02 / (0.05 * 0.07)
    "cv_lead_aoig": "3.84",
    "pv_of_cv": "854.29",
    "anchor": "7127.51",      # published "capitalised operating income for 2017"
    "entity_value": "6945.31",
}

PRINTED_HEADLINE = {
    "entity_value": "6945.31",
    "per_share": "3.08",
}

# Sensitivity table: one-at-a-time moves around wacc 7% / growth 2%.
SENSITIVITY_COLUMNS = ("wacc=6%", "wacc=7%", "wacc=8%", "g=1%", "g=2%", "g=3%")
SENSITIVITY_RATES = ((0.06, 0.02), (0.07, 0.02), (0.08, 0.02), (0.07, 0.01), (0.07, 0.02), (0.07, 0.03))

PRINTED_SENSITIVITY = {
    "pv_explicit": ("1785.10", "1736.93", "1690.77", "1736.93", "1736.93", "1736.93"),
    "cv": ("8417.43", "6425.10", "5110.92", "5301.76", "6425.10", "8110.12"),
    "entity_value": ("10202.54", "8162.03", "6801.69", "7038.69", "8162.03", "9847.04"),
    "env_change_pct": ("25.00", "0", "-16.67", "-13.76", "0", "20.64"),
    "equity_value": ("8428.74", "6388.23", "5027.89", "5264.89", "6388.23", "8073.24"),
    "eqv_change_pct": ("31.94", "0", "-21.29", "-17.58", "0", "26.38"),
}

PRINTED_COMPS = {
    "peer_multiples": {
        ("Tesco", "ebit"): "10.6",
        ("Sainsburys", "ebit"): "11.0",
        ("Tesco", "sales"): "1.0",
        ("Sainsburys", "sales"): "0.6",
    },
    "central_multiple": {
        ("ebit", "median"): "10.8",
        ("ebit", "harmonic_mean"): "10.53",
        ("sales", "median"): "0.8",
        ("sales", "harmonic_mean"): "0.77",
    },
    "drivers": {"ebit": "746.50", "sales": "9934.30"},
    "net_financial_liabilities": "-1762.40",
    "noncontrolling_interest": "-11.40",
    "shares": "1605.51",
    "entity_value": ("8062.20", "7860.65", "7947.44", "7649.41"),
    "equity_value": ("6288.40", "6086.85", "6173.64", "5875.61"),
    "per_share": ("3.92", "3.79", "3.85", "3.66"),
    "average_entity_value": "7879.92",
    "average_equity_value": "6106.13",
    "average_per_share": "3.80",
}

PRINTED = {
    "projection": PRINTED_PROJECTION,
    "movement": PRINTED_MOVEMENT,
    "method2": PRINTED_METHOD2,
    "method1": PRINTED_METHOD1,
    "fcfvm": PRINTED_FCFVM,
    "revm": PRINTED_REVM,
    "aegm": PRINTED_AEGM,
    "headline": PRINTED_HEADLINE,
    "sensitivity": PRINTED_SENSITIVITY,
    "comps": PRINTED_COMPS,
}
