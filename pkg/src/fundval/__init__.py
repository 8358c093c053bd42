"""Deterministic equity valuation: flow projection, three reconciling
valuation models, linear information dynamics, peer multiples, assumption
sensitivity grids, a first-digit screen, and reconciliation of a bundled
worked example against its published figures.
"""

from .benford import BenfordResult, benford_pmf, benford_screen, leading_digit
from .errors import DomainError, InputError, ParseError
from .forecast import Assumptions, FlowSeries, grow, parse_assumptions, project_flows
from .lim import (
    FelthamOhlsonParams,
    OhlsonParams,
    fo_coefficients,
    fo_value,
    ohlson_coefficients,
    ohlson_value,
)
from .multiples import Comparable, CompsResult, central_multiple, parse_comparables, run_comps
from .reconcile import ReconciliationReport, ReconciliationRow, build_report
from .sensitivity import SensitivityGrid, sensitivity_grid
from .statements import (
    StatementSet,
    check_clean_surplus,
    net_operating_assets,
    parse_statements_file,
    working_capital,
)
from .valuation import (
    ValuationResult,
    aeg,
    aoig,
    continuing_value,
    equity_bridge,
    fcf_method1,
    fcf_method2,
    present_value,
    residual_earnings,
    residual_operating_income,
    roce,
    value_aegm,
    value_fcfvm,
    value_revm,
)

__version__ = "0.1.0"

__all__ = [
    "Assumptions",
    "BenfordResult",
    "Comparable",
    "CompsResult",
    "DomainError",
    "FelthamOhlsonParams",
    "FlowSeries",
    "InputError",
    "OhlsonParams",
    "ParseError",
    "ReconciliationReport",
    "ReconciliationRow",
    "SensitivityGrid",
    "StatementSet",
    "ValuationResult",
    "aeg",
    "aoig",
    "benford_pmf",
    "benford_screen",
    "build_report",
    "central_multiple",
    "check_clean_surplus",
    "continuing_value",
    "equity_bridge",
    "fcf_method1",
    "fcf_method2",
    "fo_coefficients",
    "fo_value",
    "grow",
    "leading_digit",
    "net_operating_assets",
    "ohlson_coefficients",
    "ohlson_value",
    "parse_assumptions",
    "parse_comparables",
    "parse_statements_file",
    "present_value",
    "project_flows",
    "residual_earnings",
    "residual_operating_income",
    "roce",
    "run_comps",
    "sensitivity_grid",
    "value_aegm",
    "value_fcfvm",
    "value_revm",
    "working_capital",
]
