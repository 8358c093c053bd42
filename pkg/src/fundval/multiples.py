"""Comparable-company relative valuation.

Peer multiples come from peer entity value over a driver when the peer's
entity value is known, or are taken as given when only the multiples
themselves are available (a common situation when working from someone
else's table). A central tendency per (driver, method) is applied to the
target's driver and pushed through the equity bridge. Supplied multiples
can override the computed ones so a published row can be replayed
verbatim; when the two disagree beyond tolerance the row is flagged
rather than silently accepted.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError, InputError, ParseError
from .valuation import equity_bridge

__all__ = [
    "Comparable",
    "CompsRow",
    "CompsResult",
    "central_multiple",
    "value_by_multiple",
    "run_comps",
    "parse_comparables",
]

METHODS = ("median", "harmonic_mean", "mean")

# Supplied-vs-computed multiples differing by more than this are flagged.
MULTIPLE_DEVIATION_TOL = 0.005


@dataclass(frozen=True)
class Comparable:
    """One peer: named driver amounts, optionally with its entity value.

    When ``entity_value`` is present, the peer's multiple for a driver is
    entity_value / driver. When it is None, the driver map is read as the
    peer's multiples directly (taken as given).
    """

    name: str
    entity_value: float | None
    drivers: Mapping[str, float]

    def multiple_for(self, driver: str) -> float:
        if driver not in self.drivers:
            raise InputError(f"comparable {self.name!r} is missing driver {driver!r}")
        value = self.drivers[driver]
        if self.entity_value is None:
            return value
        if self.entity_value <= 0:
            raise DomainError(
                f"comparable {self.name!r} needs a positive entity value to form multiples"
            )
        if value == 0:
            raise DomainError(f"comparable {self.name!r} has a zero {driver!r} driver")
        return self.entity_value / value


def central_multiple(values: Sequence[float], method: str) -> float:
    """Central tendency of peer multiples.

    Args:
        values: peer multiples, non-empty.
        method: "median" (even count: mean of the middle pair),
            "harmonic_mean" (n over the sum of reciprocals; strictly
            positive inputs only), or "mean".

    Raises:
        InputError: empty input or unknown method.
        DomainError: non-positive value under the harmonic mean.
    """
    if not values:
        raise InputError("cannot take a central multiple of no values")
    if method == "median":
        return statistics.median(values)
    if method == "mean":
        return math.fsum(values) / len(values)
    if method == "harmonic_mean":
        if any(v <= 0 for v in values):
            raise DomainError("harmonic mean requires strictly positive values")
        return len(values) / math.fsum(1.0 / v for v in values)
    raise InputError(f"unknown central-tendency method {method!r}")


def value_by_multiple(multiple: float, driver: float) -> float:
    """Target value implied by a multiple: multiple times driver."""
    return multiple * driver


@dataclass(frozen=True)
class CompsRow:
    driver: str
    method: str
    peer_multiples: tuple[float, ...]
    computed_multiple: float
    multiple: float           # the one actually used (supplied override or computed)
    supplied: bool
    deviates: bool            # supplied and disagreeing with computed beyond tolerance
    entity_value: float
    equity_value: float
    per_share: float | None


@dataclass(frozen=True)
class CompsResult:
    """Per-(driver, method) valuation rows plus arithmetic averages."""

    rows: tuple[CompsRow, ...]
    nfl: float
    nci: float
    shares: float | None
    average_entity_value: float
    average_equity_value: float
    average_per_share: float | None


def run_comps(
    target_drivers: Mapping[str, float],
    nfl: float,
    nci: float,
    shares: float | None,
    comparables: Sequence[Comparable],
    drivers: Sequence[str] = ("ebit", "sales"),
    methods: Sequence[str] = ("median", "harmonic_mean"),
    supplied: Mapping[tuple[str, str], float] | None = None,
) -> CompsResult:
    """Run the full comparables table.

    Args:
        target_drivers: the target's driver amounts keyed by driver id.
        nfl, nci: equity-bridge deductions.
        shares: share count for per-share values, or None to skip them.
        comparables: the peer set; every peer must cover every requested driver.
        drivers: driver ids to value on, in output order.
        methods: central-tendency methods per driver, in output order.
        supplied: optional (driver, method) -> multiple overrides.

    Returns:
        CompsResult with one row per (driver, method) and plain arithmetic
        averages across rows.

    Raises:
        InputError: no comparables, a missing target or peer driver, or an
            unknown method.
    """
    if not comparables:
        raise InputError("comparables list is empty")
    supplied = dict(supplied or {})
    rows = []
    for driver in drivers:
        if driver not in target_drivers:
            raise InputError(f"target is missing driver {driver!r}")
        peer_multiples = tuple(comp.multiple_for(driver) for comp in comparables)
        for method in methods:
            computed = central_multiple(peer_multiples, method)
            override = supplied.get((driver, method))
            multiple = computed if override is None else override
            env = value_by_multiple(multiple, target_drivers[driver])
            eqv, per_share = equity_bridge(env, nfl, nci, shares)
            rows.append(
                CompsRow(
                    driver=driver,
                    method=method,
                    peer_multiples=peer_multiples,
                    computed_multiple=computed,
                    multiple=multiple,
                    supplied=override is not None,
                    deviates=override is not None
                    and abs(override - computed) > MULTIPLE_DEVIATION_TOL,
                    entity_value=env,
                    equity_value=eqv,
                    per_share=per_share,
                )
            )
    n = len(rows)
    avg_env = math.fsum(r.entity_value for r in rows) / n
    avg_eqv = math.fsum(r.equity_value for r in rows) / n
    avg_ps = None
    if shares is not None:
        avg_ps = math.fsum(r.per_share for r in rows) / n
    return CompsResult(
        rows=tuple(rows),
        nfl=nfl,
        nci=nci,
        shares=shares,
        average_entity_value=avg_env,
        average_equity_value=avg_eqv,
        average_per_share=avg_ps,
    )


_COMPS_HEADER = ("name", "entity_value", "ebit", "sales")


def parse_comparables(text) -> tuple[Comparable, ...]:
    """Parse a ``name,entity_value,ebit,sales`` CSV of peers.

    A blank entity_value marks the driver columns as multiples taken as
    given rather than raw driver amounts. Blank driver cells mean the peer
    does not cover that driver.
    """
    if hasattr(text, "read"):
        text = text.read()
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("comparables file is empty")
    header = tuple(c.strip().lower() for c in rows[0])
    if header != _COMPS_HEADER:
        raise ParseError(
            f"expected header 'name,entity_value,ebit,sales', got {','.join(rows[0])!r}", line=1
        )
    comps = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise ParseError(f"expected 4 fields, got {len(row)}", line=lineno)
        name, raw_env, raw_ebit, raw_sales = (c.strip() for c in row)
        if not name:
            raise ParseError("empty comparable name", line=lineno)

        def _num(raw: str, column: str) -> float | None:
            if not raw:
                return None
            try:
                value = float(raw)
            except ValueError:
                raise ParseError(f"non-numeric {column} {raw!r}", line=lineno) from None
            if not math.isfinite(value):
                raise ParseError(f"non-finite {column} {raw!r}", line=lineno)
            return value

        env = _num(raw_env, "entity_value")
        drivers = {}
        for key, raw in (("ebit", raw_ebit), ("sales", raw_sales)):
            value = _num(raw, key)
            if value is not None:
                drivers[key] = value
        if not drivers:
            raise ParseError(f"comparable {name!r} has no driver values", line=lineno)
        comps.append(Comparable(name=name, entity_value=env, drivers=drivers))
    if not comps:
        raise ParseError("comparables file has a header but no peers")
    return tuple(comps)
