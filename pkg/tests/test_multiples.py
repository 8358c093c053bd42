"""Peer multiples: central tendencies, valuation rows, and the csv format."""

import pytest

from fundval.errors import DomainError, InputError, ParseError
from fundval.fixtures import MS_NCI, MS_NFL, ms_comparables
from fundval.multiples import (
    Comparable,
    central_multiple,
    parse_comparables,
    run_comps,
    value_by_multiple,
)


def test_central_multiple_methods():
    values = (4.0, 9.0, 15.0)
    assert central_multiple(values, "median") == 9.0
    assert abs(central_multiple(values, "mean") - 28.0 / 3.0) < 1e-12
    harmonic = central_multiple(values, "harmonic_mean")
    assert abs(harmonic - 3.0 / (1 / 4.0 + 1 / 9.0 + 1 / 15.0)) < 1e-12


def test_central_multiple_rejects_bad_input():
    with pytest.raises(InputError):
        central_multiple((), "median")
    with pytest.raises(InputError):
        central_multiple((1.0, 2.0), "mode")
    with pytest.raises(DomainError):
        central_multiple((1.0, -2.0), "harmonic_mean")


def test_comparable_multiples_from_entity_value():
    peer = Comparable(name="peer", entity_value=1000.0, drivers={"ebit": 100.0, "sales": 500.0})
    assert abs(peer.multiple_for("ebit") - 10.0) < 1e-12
    assert abs(peer.multiple_for("sales") - 2.0) < 1e-12
    with pytest.raises(InputError):
        peer.multiple_for("ebitda")
    with pytest.raises(DomainError):
        Comparable(name="z", entity_value=1000.0, drivers={"ebit": 0.0}).multiple_for("ebit")


def test_comparable_multiples_taken_as_given():
    peer = Comparable(name="peer", entity_value=None, drivers={"ebit": 10.6})
    assert peer.multiple_for("ebit") == 10.6


def test_value_by_multiple():
    assert abs(value_by_multiple(10.8, 746.50) - 8062.20) < 1e-9


def test_run_comps_row_order_and_averages():
    result = run_comps(
        {"ebit": 100.0, "sales": 400.0},
        nfl=50.0,
        nci=0.0,
        shares=10.0,
        comparables=(
            Comparable(name="a", entity_value=None, drivers={"ebit": 8.0, "sales": 2.0}),
            Comparable(name="b", entity_value=None, drivers={"ebit": 12.0, "sales": 4.0}),
        ),
    )
    keys = [(row.driver, row.method) for row in result.rows]
    assert keys == [
        ("ebit", "median"),
        ("ebit", "harmonic_mean"),
        ("sales", "median"),
        ("sales", "harmonic_mean"),
    ]
    median_row = result.rows[0]
    assert median_row.multiple == 10.0 and median_row.entity_value == 1000.0
    assert median_row.equity_value == 950.0 and median_row.per_share == 95.0
    envs = [row.entity_value for row in result.rows]
    assert abs(result.average_entity_value - sum(envs) / 4.0) < 1e-9


def test_run_comps_supplied_multiples_flag_deviations():
    result = run_comps(
        {"ebit": 100.0},
        nfl=0.0,
        nci=0.0,
        shares=None,
        comparables=(Comparable(name="a", entity_value=None, drivers={"ebit": 10.0}),),
        drivers=("ebit",),
        methods=("median",),
        supplied={("ebit", "median"): 10.004},
    )
    row = result.rows[0]
    assert row.supplied and not row.deviates  # within the 0.005 tolerance
    assert row.multiple == 10.004
    assert result.average_per_share is None

    result = run_comps(
        {"ebit": 100.0},
        nfl=0.0,
        nci=0.0,
        shares=None,
        comparables=(Comparable(name="a", entity_value=None, drivers={"ebit": 10.0}),),
        drivers=("ebit",),
        methods=("median",),
        supplied={("ebit", "median"): 10.006},
    )
    assert result.rows[0].deviates


def test_run_comps_input_errors():
    peers = (Comparable(name="a", entity_value=None, drivers={"ebit": 10.0}),)
    with pytest.raises(InputError):
        run_comps({"sales": 1.0}, 0.0, 0.0, None, peers, drivers=("ebit",), methods=("median",))
    with pytest.raises(InputError):
        run_comps({"ebit": 1.0}, 0.0, 0.0, None, (), drivers=("ebit",), methods=("median",))


def test_parse_comparables():
    peers = parse_comparables("name,entity_value,ebit,sales\nTesco,,10.6,1.0\nSainsburys,,11.0,0.6\n")
    assert [p.name for p in peers] == ["Tesco", "Sainsburys"]
    assert peers[0].entity_value is None
    assert peers[0].drivers == {"ebit": 10.6, "sales": 1.0}
    bundled = ms_comparables()
    assert len(bundled) == 2


def test_parse_comparables_errors():
    with pytest.raises(ParseError):
        parse_comparables("name,value\nx,1\n")
    with pytest.raises(ParseError) as err:
        parse_comparables("name,entity_value,ebit,sales\nTesco,,ten,1.0\n")
    assert "line 2" in str(err.value)
    with pytest.raises(ParseError):
        parse_comparables("name,entity_value,ebit,sales\n")
