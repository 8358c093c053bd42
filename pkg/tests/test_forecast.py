"""Growth arithmetic, flow projection, and assumptions parsing."""

import pytest

from fundval.errors import InputError, ParseError
from fundval.fixtures import ms_assumptions, ms_statement_set
from fundval.forecast import FlowSeries, grow, parse_assumptions, ppe_rollforward, project_flows


def test_grow_compounds():
    assert grow(100.0, 0.02, 0) == 100.0
    assert abs(grow(100.0, 0.02, 3) - 106.1208) < 1e-9
    assert abs(grow(100.0, -0.5, 2) - 25.0) < 1e-12


def test_ppe_rollforward():
    assert abs(ppe_rollforward(5829.90, 513.47, 396.87) - 5946.50) < 1e-9


def test_project_flows_from_bundled_statements():
    series = project_flows(ms_statement_set(), ms_assumptions())
    assert series.labels == ("2016", "2017E", "2018E", "2019E", "2020E", "2021E")
    assert series.horizon == 5
    # First forecast operating income is pinned by the assumptions file.
    assert series.operating_income[0] == 483.20
    assert abs(series.operating_income[1] - 446.84) < 1e-9
    assert abs(series.operating_income[2] - 446.84 * 1.02) < 1e-9
    # Base NOA comes from the balance-sheet components and then grows at 2%.
    assert abs(series.net_operating_assets[0] - 5192.00) < 1e-9
    for t in range(1, 6):
        expected = 5192.00 * 1.02**t
        assert abs(series.net_operating_assets[t] - expected) < 1e-6
    # FCF = OI - change in NOA, per period.
    fcf = series.free_cash_flow()
    assert len(fcf) == 5
    for t in range(1, 6):
        delta = series.net_operating_assets[t] - series.net_operating_assets[t - 1]
        assert abs(fcf[t - 1] - (series.operating_income[t] - delta)) < 1e-12


def test_flow_series_validation():
    with pytest.raises(InputError):
        FlowSeries(labels=("only",), operating_income=(1.0,), net_operating_assets=(1.0,))
    with pytest.raises(InputError):
        FlowSeries(
            labels=("a", "b"),
            operating_income=(1.0, 2.0, 3.0),
            net_operating_assets=(1.0, 2.0),
        )


def test_parse_assumptions():
    a = parse_assumptions("growth=0.02\nwacc = 0.07\nhorizon=5\nshares=1635.90\n")
    assert (a.sales_growth, a.wacc, a.horizon, a.shares_outstanding) == (0.02, 0.07, 5, 1635.90)
    assert a.oi_anchor is None


def test_parse_assumptions_rejects_bad_input():
    with pytest.raises(ParseError):
        parse_assumptions("growth=0.02\nwacc=0.07\nhorizon=5\ncolour=blue\n")
    with pytest.raises(ParseError):
        parse_assumptions("growth=0.02\nwacc=0.07\nhorizon=2.5\n")
    with pytest.raises((ParseError, InputError)):
        parse_assumptions("growth=0.02\nhorizon=5\n")  # wacc missing


def test_with_rates_replaces_only_what_is_asked():
    a = ms_assumptions()
    b = a.with_rates(wacc=0.08)
    assert b.wacc == 0.08 and b.sales_growth == a.sales_growth and b.horizon == a.horizon
    c = a.with_rates(sales_growth=0.01)
    assert c.sales_growth == 0.01 and c.wacc == a.wacc


def test_assumptions_validation():
    with pytest.raises(InputError):
        parse_assumptions("growth=0.02\nwacc=0.07\nhorizon=0\n")
    with pytest.raises(InputError):
        parse_assumptions("growth=inf\nwacc=0.07\nhorizon=5\n")
