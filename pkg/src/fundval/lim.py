"""Closed-form valuation under linear information dynamics.

Two classic parameterizations: the Ohlson form (residual earnings decay at
a persistence below one, plus an "other information" variable with its own
persistence) and the Feltham-Ohlson form (adds a conservatism loading on
net operating assets and gross NOA growth). Both deliver value as book (or
NOA) plus alpha-weighted state, and both are equivalent to the explicit
infinite-horizon present value of the expected residual stream generated
by their one-step dynamics — the property tests grind that out by brute
force.

Parameters are validated strictly; a persistence at or above the gross
discount factor makes the geometric series diverge, and clamping would
hide that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "OhlsonParams",
    "FelthamOhlsonParams",
    "ohlson_coefficients",
    "ohlson_value",
    "ohlson_value_weighted",
    "ohlson_step",
    "fo_coefficients",
    "fo_value",
    "fo_step",
]


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


@dataclass(frozen=True)
class OhlsonParams:
    """Residual-earnings dynamics: persistence, other-info persistence, gross equity rate."""

    omega1: float
    gamma1: float
    rho_e: float

    def __post_init__(self):
        _check(all(math.isfinite(x) for x in (self.omega1, self.gamma1, self.rho_e)),
               "parameters must be finite")
        _check(0.0 <= self.omega1 < 1.0, f"omega1 must be in [0, 1), got {self.omega1}")
        _check(0.0 <= self.gamma1 < 1.0, f"gamma1 must be in [0, 1), got {self.gamma1}")
        _check(self.rho_e > 1.0, f"rho_e is a gross rate and must exceed 1, got {self.rho_e}")
        _check(self.rho_e > self.omega1, f"rho_e must exceed omega1 ({self.omega1})")
        _check(self.rho_e > self.gamma1, f"rho_e must exceed gamma1 ({self.gamma1})")


@dataclass(frozen=True)
class FelthamOhlsonParams:
    """Adds a conservatism loading on NOA and a gross NOA growth factor.

    ``growth_factor`` is gross (next NOA = growth_factor * NOA); the
    forecast module's sales_growth is a net rate. The names differ on
    purpose.
    """

    omega0: float
    omega1: float
    gamma1: float
    growth_factor: float
    rho_f: float

    def __post_init__(self):
        values = (self.omega0, self.omega1, self.gamma1, self.growth_factor, self.rho_f)
        _check(all(math.isfinite(x) for x in values), "parameters must be finite")
        _check(self.omega0 >= 0.0, f"omega0 must be >= 0, got {self.omega0}")
        _check(0.0 <= self.omega1 < 1.0, f"omega1 must be in [0, 1), got {self.omega1}")
        _check(0.0 <= self.gamma1 < 1.0, f"gamma1 must be in [0, 1), got {self.gamma1}")
        _check(self.rho_f > 1.0, f"rho_f is a gross rate and must exceed 1, got {self.rho_f}")
        _check(self.growth_factor < self.rho_f,
               f"NOA growth factor {self.growth_factor} must stay below rho_f {self.rho_f}")
        _check(self.rho_f > self.omega1, f"rho_f must exceed omega1 ({self.omega1})")
        _check(self.rho_f > self.gamma1, f"rho_f must exceed gamma1 ({self.gamma1})")


def ohlson_coefficients(p: OhlsonParams) -> tuple[float, float]:
    """alpha1 = w1/(rho-w1); alpha2 = rho/((rho-w1)(rho-gamma1))."""
    d1 = p.rho_e - p.omega1
    d2 = p.rho_e - p.gamma1
    _check(d1 > 0 and d2 > 0, "persistence parameters must stay below the gross rate")
    return p.omega1 / d1, p.rho_e / (d1 * d2)


def ohlson_value(b_t: float, re_t: float, v_t: float, p: OhlsonParams) -> float:
    """Book value plus alpha-weighted residual earnings and other information."""
    a1, a2 = ohlson_coefficients(p)
    return b_t + a1 * re_t + a2 * v_t


def ohlson_value_weighted(b_t: float, earn_t: float, d_t: float, v_t: float, p: OhlsonParams) -> float:
    """Weighted-average form over earnings, book value and dividends.

    Algebraically identical to ``ohlson_value`` whenever the clean surplus
    relation ties B_{t-1} to B_t - Earn_t + d_t.
    """
    a1, a2 = ohlson_coefficients(p)
    cost = p.rho_e - 1.0
    return b_t + a1 * earn_t - a1 * cost * (b_t - earn_t + d_t) + a2 * v_t


def ohlson_step(re_t: float, v_t: float, p: OhlsonParams) -> tuple[float, float]:
    """One step of the expected dynamics: RE' = w1*RE + v; v' = gamma1*v."""
    return p.omega1 * re_t + v_t, p.gamma1 * v_t


def fo_coefficients(p: FelthamOhlsonParams) -> tuple[float, float, float]:
    """alpha1, alpha2 as in the Ohlson form (entity rate); alpha3 = rho*w0/((rho-w1)(rho-g))."""
    d1 = p.rho_f - p.omega1
    d2 = p.rho_f - p.gamma1
    d3 = p.rho_f - p.growth_factor
    _check(d1 > 0 and d2 > 0 and d3 > 0, "persistence/growth parameters must stay below the gross rate")
    a1 = p.omega1 / d1
    a2 = p.rho_f / (d1 * d2)
    a3 = p.rho_f * p.omega0 / (d1 * d3)
    return a1, a2, a3


def fo_value(noa_t: float, re_t: float, v_t: float, nfa_t: float,
             p: FelthamOhlsonParams) -> tuple[float, float]:
    """Value of operations and total value under the conservatism-corrected form.

    operations = NOA + a1*RE + a2*v + a3*NOA (the a3 term is the
    conservatism correction); total = operations + net financial assets,
    which equals book value plus the same corrections since
    B = NOA + NFA.

    Returns:
        (operations_value, total_value).
    """
    a1, a2, a3 = fo_coefficients(p)
    operations = noa_t + a1 * re_t + a2 * v_t + a3 * noa_t
    return operations, operations + nfa_t


def fo_step(roi_t: float, noa_t: float, v_t: float,
            p: FelthamOhlsonParams) -> tuple[float, float, float]:
    """One step: ROI' = w0*NOA + w1*ROI + v; NOA' = g*NOA; v' = gamma1*v."""
    return (
        p.omega0 * noa_t + p.omega1 * roi_t + v_t,
        p.growth_factor * noa_t,
        p.gamma1 * v_t,
    )
