"""Serialization of result objects and deterministic text rendering.

Results cross the service boundary as plain JSON-able dicts with a "kind"
discriminator; the same dicts drive all three output formats. Table output
is for reading: monetary amounts to two decimals (half-up), rates as
two-decimal percents, unavailable cells as "n/a". The csv and json forms
are lossless: floats go out at full precision (shortest round-trip repr).
Identical inputs produce byte-identical output in every format.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from typing import Any, Mapping, Sequence

from .benford import BenfordResult
from .errors import InputError
from .multiples import CompsResult
from .reconcile import ReconciliationReport
from .rounding import round_half_up
from .sensitivity import SensitivityGrid
from .valuation import ValuationResult

__all__ = [
    "FORMATS",
    "benford_payload",
    "lim_payload",
    "multiples_payload",
    "reconciliation_payload",
    "render",
    "sensitivity_payload",
    "valuation_payload",
]

FORMATS = ("table", "csv", "json")


# --------------------------------------------------------------------------
# Payload builders: core result objects -> JSON-able dicts.


def valuation_payload(results: Mapping[str, ValuationResult]) -> dict:
    return {
        "kind": "valuation",
        "results": {name: asdict(result) for name, result in results.items()},
    }


def sensitivity_payload(grid: SensitivityGrid) -> dict:
    return {"kind": "sensitivity", **asdict(grid)}


def multiples_payload(result: CompsResult) -> dict:
    return {"kind": "multiples", **asdict(result)}


def benford_payload(result: BenfordResult) -> dict:
    return {"kind": "benford", **asdict(result)}


def lim_payload(model: str, coefficients: Mapping[str, float], values: Mapping[str, float]) -> dict:
    return {
        "kind": "lim",
        "model": model,
        "coefficients": dict(coefficients),
        "values": dict(values),
    }


def reconciliation_payload(report: ReconciliationReport) -> dict:
    return {"kind": "reconciliation", **asdict(report)}


# --------------------------------------------------------------------------
# Formatting primitives.


def _money(value: float | None) -> str:
    return "n/a" if value is None else f"{round_half_up(value, 2):.2f}"


def _pct(value: float | None) -> str:
    """A fractional rate as a two-decimal percent string."""
    return "n/a" if value is None else f"{round_half_up(value * 100, 2):.2f}%"


def _num(value: float | None, places: int = 4) -> str:
    return "n/a" if value is None else f"{round_half_up(value, places):.{places}f}"


def _raw(value: Any) -> str:
    """Lossless cell for csv output."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]], title: str = "") -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def line(cells: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()

    out = []
    if title:
        out.append(title)
    out.append(line(headers))
    out.append(line(["-" * w for w in widths]))
    out.extend(line(row) for row in rows)
    return "\n".join(out) + "\n"


def _csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_raw(cell) for cell in row])
    return buf.getvalue()


# --------------------------------------------------------------------------
# Per-kind renderers.


def _render_valuation(payload: Mapping, fmt: str) -> str:
    results = payload["results"]
    if fmt == "table":
        headers = [
            "model",
            "rate",
            "growth",
            "anchor",
            "pv_explicit",
            "pv_of_cv",
            "entity_value",
            "equity_value",
            "per_share",
        ]
        rows = []
        notes = []
        for name, r in results.items():
            rows.append(
                [
                    name,
                    _pct(r["discount_rate"]),
                    _pct(r["growth"]),
                    _money(r["anchor"]),
                    _money(r["pv_explicit"]),
                    _money(r["pv_of_cv"]),
                    _money(r["entity_value"]),
                    _money(r["equity_value"]),
                    "n/a" if r["per_share"] is None else f"{round_half_up(r['per_share'], 2):.2f}",
                ]
            )
            for warning in r["warnings"]:
                notes.append(f"note [{name}]: {warning}")
        text = _table(headers, rows)
        if notes:
            text += "\n".join(notes) + "\n"
        return text
    headers = [
        "model",
        "period",
        "flow",
        "discount_factor",
        "present_value",
        "entity_value",
        "equity_value",
        "per_share",
    ]
    rows = []
    for name, r in results.items():
        summary = [r["entity_value"], r["equity_value"], r["per_share"]]
        for entry in r["schedule"]:
            rows.append(
                [name, entry["period"], entry["flow"], entry["discount_factor"], entry["present_value"]]
                + summary
            )
        rows.append([name, "CV", r["continuing_value"], None, r["pv_of_cv"]] + summary)
    return _csv(headers, rows)


def _render_sensitivity(payload: Mapping, fmt: str) -> str:
    cells = payload["cells"]
    if fmt == "table":
        title = (
            f"model {payload['model']}: baseline wacc {_pct(payload['baseline_wacc'])}, "
            f"growth {_pct(payload['baseline_growth'])}, "
            f"entity value {_money(payload['baseline_entity_value'])}, "
            f"equity value {_money(payload['baseline_equity_value'])}"
        )
        headers = [
            "axis",
            "wacc",
            "growth",
            "pv_explicit",
            "pv_of_cv",
            "entity_value",
            "equity_value",
            "env_change",
            "eqv_change",
            "note",
        ]
        rows = [
            [
                c["axis"],
                _pct(c["wacc"]),
                _pct(c["growth"]),
                _money(c["pv_explicit"]),
                _money(c["pv_of_cv"]),
                _money(c["entity_value"]),
                _money(c["equity_value"]),
                _pct(c["pct_change_env"]),
                _pct(c["pct_change_eqv"]),
                c["note"],
            ]
            for c in cells
        ]
        return _table(headers, rows, title)
    headers = [
        "axis",
        "wacc",
        "growth",
        "valid",
        "pv_explicit",
        "pv_of_cv",
        "entity_value",
        "equity_value",
        "pct_change_env",
        "pct_change_eqv",
        "note",
    ]
    rows = [[c[h] for h in headers] for c in cells]
    return _csv(headers, rows)


def _render_multiples(payload: Mapping, fmt: str) -> str:
    rows_in = payload["rows"]
    if fmt == "table":
        headers = [
            "driver",
            "method",
            "computed",
            "used",
            "supplied",
            "flagged",
            "entity_value",
            "equity_value",
            "per_share",
        ]
        rows = [
            [
                r["driver"],
                r["method"],
                _money(r["computed_multiple"]),
                _money(r["multiple"]),
                "yes" if r["supplied"] else "no",
                "yes" if r["deviates"] else "no",
                _money(r["entity_value"]),
                _money(r["equity_value"]),
                _money(r["per_share"]),
            ]
            for r in rows_in
        ]
        rows.append(
            [
                "average",
                "",
                "",
                "",
                "",
                "",
                _money(payload["average_entity_value"]),
                _money(payload["average_equity_value"]),
                _money(payload["average_per_share"]),
            ]
        )
        return _table(headers, rows)
    headers = [
        "driver",
        "method",
        "peer_multiples",
        "computed_multiple",
        "multiple",
        "supplied",
        "deviates",
        "entity_value",
        "equity_value",
        "per_share",
    ]
    rows = []
    for r in rows_in:
        row = dict(r)
        row["peer_multiples"] = ";".join(repr(m) for m in r["peer_multiples"])
        rows.append([row[h] for h in headers])
    rows.append(
        [
            "average",
            "",
            "",
            "",
            "",
            "",
            "",
            payload["average_entity_value"],
            payload["average_equity_value"],
            payload["average_per_share"],
        ]
    )
    return _csv(headers, rows)


def _render_benford(payload: Mapping, fmt: str) -> str:
    digits = range(1, 10)
    if fmt == "table":
        headers = ["digit", "count", "observed", "expected"]
        rows = [
            [
                str(d),
                str(payload["counts"][d - 1]),
                _pct(payload["observed"][d - 1]),
                _pct(payload["expected"][d - 1]),
            ]
            for d in digits
        ]
        text = _table(headers, rows)
        text += (
            f"n {payload['n']} (min sample {payload['min_sample']})\n"
            f"chi2 {_num(payload['chi2'])} (critical {_num(payload['chi2_critical'])})\n"
            f"mad {_num(payload['mad'])} (threshold {_num(payload['mad_threshold'])})\n"
            f"verdict {payload['verdict']}\n"
        )
        return text
    headers = ["digit", "count", "observed", "expected"]
    rows = [
        [d, payload["counts"][d - 1], payload["observed"][d - 1], payload["expected"][d - 1]]
        for d in digits
    ]
    for key in ("n", "min_sample", "chi2", "chi2_critical", "mad", "mad_threshold", "verdict"):
        rows.append([key, payload[key], None, None])
    return _csv(headers, rows)


def _render_lim(payload: Mapping, fmt: str) -> str:
    pairs = [("model", payload["model"])]
    pairs += sorted(payload["coefficients"].items())
    pairs += sorted(payload["values"].items())
    if fmt == "table":
        headers = ["key", "value"]
        rows = [[k, v if isinstance(v, str) else _num(v, 6)] for k, v in pairs]
        return _table(headers, rows)
    return _csv(["key", "value"], [[k, v] for k, v in pairs])


def _render_reconciliation(payload: Mapping, fmt: str) -> str:
    rows_in = payload["rows"]
    if fmt == "table":
        title = (
            f"fixture {payload['fixture']}: {len(rows_in)} rows — "
            f"match {payload['n_match']}, rounding {payload['n_rounding']}, "
            f"errata {payload['n_errata']}"
        )
        headers = ["location", "printed", "recomputed", "abs_dev", "rel_dev", "class", "note"]
        rows = [
            [
                r["location"],
                r["printed"],
                _num(r["recomputed"]),
                _num(r["abs_deviation"]),
                "n/a" if r["rel_deviation"] is None else f"{round_half_up(r['rel_deviation'] * 100, 3):.3f}%",
                r["classification"],
                r["note"],
            ]
            for r in rows_in
        ]
        return _table(headers, rows, title)
    headers = [
        "location",
        "printed",
        "printed_value",
        "recomputed",
        "abs_deviation",
        "rel_deviation",
        "classification",
        "note",
    ]
    return _csv(headers, [[r[h] for h in headers] for r in rows_in])


_RENDERERS = {
    "valuation": _render_valuation,
    "sensitivity": _render_sensitivity,
    "multiples": _render_multiples,
    "benford": _render_benford,
    "lim": _render_lim,
    "reconciliation": _render_reconciliation,
}


def render(payload: Mapping, fmt: str) -> str:
    """Render a result payload to the requested format.

    Raises:
        InputError: unknown format or payload kind.
    """
    if fmt not in FORMATS:
        raise InputError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")
    kind = payload.get("kind")
    if kind not in _RENDERERS:
        raise InputError(f"cannot render payload of kind {kind!r}")
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return _RENDERERS[kind](payload, fmt)
