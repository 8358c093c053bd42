"""One-at-a-time and cross sensitivity of a valuation to rate assumptions.

The flow series is held fixed while the discount rate and the continuing
growth rate are swept, so a growth change moves only the continuing
value, not the explicit flows. Cells whose rate pair is infeasible
(discount rate at or below growth) are marked invalid with a note instead
of aborting the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, InputError
from .forecast import Assumptions, FlowSeries
from .valuation import ValuationResult, value_aegm, value_fcfvm, value_revm

__all__ = ["GridCell", "SensitivityGrid", "percent_change", "sensitivity_grid"]

MODELS: dict[str, Callable[..., ValuationResult]] = {
    "fcfvm": value_fcfvm,
    "revm": value_revm,
    "aegm": value_aegm,
}


def percent_change(base: float, alternative: float) -> float:
    """(alternative - base) / base.

    Raises:
        DomainError: zero base.
    """
    if base == 0:
        raise DomainError("percent change from a zero base is undefined")
    return (alternative - base) / base


@dataclass(frozen=True)
class GridCell:
    """One (wacc, growth) evaluation.

    axis is "wacc" or "growth" for one-at-a-time sweeps and "cross" for
    full-matrix cells. Invalid cells carry a note and None numerics.
    """

    wacc: float
    growth: float
    axis: str
    valid: bool
    pv_explicit: float | None
    pv_of_cv: float | None
    entity_value: float | None
    equity_value: float | None
    pct_change_env: float | None
    pct_change_eqv: float | None
    note: str = ""


@dataclass(frozen=True)
class SensitivityGrid:
    model: str
    baseline_wacc: float
    baseline_growth: float
    baseline_entity_value: float
    baseline_equity_value: float
    wacc_values: tuple[float, ...]
    growth_values: tuple[float, ...]
    cross: bool
    cells: tuple[GridCell, ...]


def sensitivity_grid(
    series: FlowSeries,
    assumptions: Assumptions,
    wacc_values: Sequence[float],
    growth_values: Sequence[float],
    model: str = "fcfvm",
    nfl: float = 0.0,
    nci: float = 0.0,
    cross: bool = False,
) -> SensitivityGrid:
    """Sweep the discount rate and growth rate around a baseline valuation.

    Args:
        series: fixed flow series valued in every cell.
        assumptions: baseline rates; the baseline cell itself is the plain
            valuation of (series, assumptions) and is not re-derived.
        wacc_values: discount rates to try (each at baseline growth).
        growth_values: growth rates to try (each at baseline wacc).
        model: "fcfvm", "revm", or "aegm".
        nfl, nci: equity-bridge deductions applied in every cell.
        cross: evaluate the full wacc x growth matrix instead of
            one-at-a-time sweeps.

    Returns:
        SensitivityGrid whose cells carry percent changes of entity and
        equity value against the baseline.

    Raises:
        InputError: unknown model, or no values on either axis.
        DomainError: the baseline itself is infeasible.
    """
    if model not in MODELS:
        raise InputError(f"unknown model {model!r}; expected one of {sorted(MODELS)}")
    if not wacc_values and not growth_values:
        raise InputError("sensitivity grid needs at least one wacc or growth value")
    value_fn = MODELS[model]

    base = value_fn(series, assumptions, nfl=nfl, nci=nci)
    base_env = base.entity_value
    base_eqv = base.equity_value

    def cell(wacc: float, growth: float, axis: str) -> GridCell:
        try:
            result = value_fn(
                series, assumptions.with_rates(wacc=wacc, sales_growth=growth), nfl=nfl, nci=nci
            )
        except DomainError as exc:
            return GridCell(
                wacc=wacc,
                growth=growth,
                axis=axis,
                valid=False,
                pv_explicit=None,
                pv_of_cv=None,
                entity_value=None,
                equity_value=None,
                pct_change_env=None,
                pct_change_eqv=None,
                note=str(exc),
            )
        return GridCell(
            wacc=wacc,
            growth=growth,
            axis=axis,
            valid=True,
            pv_explicit=result.pv_explicit,
            pv_of_cv=result.pv_of_cv,
            entity_value=result.entity_value,
            equity_value=result.equity_value,
            pct_change_env=percent_change(base_env, result.entity_value) if base_env else None,
            pct_change_eqv=percent_change(base_eqv, result.equity_value) if base_eqv else None,
            note="",
        )

    cells = []
    if cross:
        for wacc in wacc_values:
            for growth in growth_values:
                cells.append(cell(wacc, growth, "cross"))
    else:
        for wacc in wacc_values:
            cells.append(cell(wacc, assumptions.sales_growth, "wacc"))
        for growth in growth_values:
            cells.append(cell(assumptions.wacc, growth, "growth"))

    return SensitivityGrid(
        model=model,
        baseline_wacc=assumptions.wacc,
        baseline_growth=assumptions.sales_growth,
        baseline_entity_value=base_env,
        baseline_equity_value=base_eqv,
        wacc_values=tuple(wacc_values),
        growth_values=tuple(growth_values),
        cross=cross,
        cells=tuple(cells),
    )
