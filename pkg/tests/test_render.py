"""Output formatting: rounding discipline, lossless csv/json, empty grids."""

import json

import pytest

from fundval.errors import InputError
from fundval.fixtures import MS_NCI, MS_NFL, ms_assumptions, ms_flow_series
from fundval.render import render, sensitivity_payload, valuation_payload
from fundval.rounding import round_half_up
from fundval.sensitivity import sensitivity_grid
from fundval.valuation import value_fcfvm


def _value_payload():
    result = value_fcfvm(ms_flow_series(), ms_assumptions(), nfl=MS_NFL, nci=MS_NCI)
    return valuation_payload({"fcfvm": result}), result


def test_round_half_up_goes_away_from_zero():
    assert round_half_up(2.675, 2) == 2.68
    assert round_half_up(-2.675, 2) == -2.68
    assert round_half_up(1.005, 2) == 1.01
    assert round_half_up(2.0, 2) == 2.0


def test_table_renders_money_to_two_decimals():
    payload, result = _value_payload()
    table = render(payload, "table")
    assert f"{round_half_up(result.entity_value, 2):.2f}" in table
    assert "7.00%" in table and "2.00%" in table


def test_csv_is_lossless():
    payload, result = _value_payload()
    lines = render(payload, "csv").splitlines()
    header = lines[0].split(",")
    env_column = header.index("entity_value")
    assert lines[1].split(",")[env_column] == repr(result.entity_value)


def test_json_round_trips_full_precision():
    payload, result = _value_payload()
    text = render(payload, "json")
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed["results"]["fcfvm"]["entity_value"] == result.entity_value
    assert json.loads(json.dumps(parsed)) == parsed


def test_output_is_deterministic():
    payload, _ = _value_payload()
    for fmt in ("table", "csv", "json"):
        assert render(payload, fmt) == render(payload, fmt)


def test_empty_grid_renders_header_only():
    payload = {
        "kind": "sensitivity",
        "model": "fcfvm",
        "baseline_wacc": 0.07,
        "baseline_growth": 0.02,
        "baseline_entity_value": 100.0,
        "baseline_equity_value": 90.0,
        "wacc_values": [],
        "growth_values": [],
        "cross": False,
        "cells": [],
    }
    csv_text = render(payload, "csv")
    assert csv_text.splitlines() == [
        "axis,wacc,growth,valid,pv_explicit,pv_of_cv,entity_value,equity_value,"
        "pct_change_env,pct_change_eqv,note"
    ]
    table_lines = render(payload, "table").splitlines()
    assert len(table_lines) == 3  # title, header, rule — no data rows


def test_invalid_cells_render_na():
    grid = sensitivity_grid(
        ms_flow_series(), ms_assumptions(), wacc_values=(), growth_values=(0.08,)
    )
    table = render(sensitivity_payload(grid), "table")
    assert "n/a" in table


def test_unknown_format_and_kind_rejected():
    payload, _ = _value_payload()
    with pytest.raises(InputError):
        render(payload, "xml")
    with pytest.raises(InputError):
        render({"kind": "mystery"}, "table")
