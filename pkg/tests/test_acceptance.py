"""Acceptance criteria for the valuation engine, one numbered criterion each.

Every test replays published figures from the bundled worked example
("ms") or exercises a seeded randomized property. Criterion 3 is split:
its second continuing-value replay holds as stated, while the first is
contradicted by its own operands — that test is marked as an expected
failure and the deviation is documented in the reconciliation report
rather than papered over here.
"""

from __future__ import annotations

import math
import random

import pytest

from fundval.fixtures import (
    FORECAST_LABELS,
    MS_EBIT,
    MS_NCI,
    MS_NFL,
    MS_SALES,
    MS_SHARES_COMPS,
    MS_SHARES_STATED,
    MS_SUPPLIED_MULTIPLES,
    PRINTED_COMPS,
    PRINTED_METHOD1,
    PRINTED_REVM,
    PRINTED_SENSITIVITY,
    SENSITIVITY_COLUMNS,
    ms_assumptions,
    ms_comparables,
    ms_flow_series,
)
from fundval.forecast import Assumptions, FlowSeries
from fundval.lim import (
    OhlsonParams,
    ohlson_coefficients,
    ohlson_step,
    ohlson_value,
    ohlson_value_weighted,
)
from fundval.multiples import central_multiple, run_comps
from fundval.benford import benford_pmf, benford_screen
from fundval.reconcile import build_report
from fundval.sensitivity import sensitivity_grid
from fundval.valuation import (
    aeg,
    aoig,
    continuing_value,
    fcf_method1,
    residual_earnings,
    residual_operating_income,
    value_aegm,
    value_fcfvm,
    value_revm,
)

# The operative flow rows of the worked example, as printed (2 dp).
OI_ROW = (446.84, 455.77, 464.89, 474.19, 483.67)
NOA_ROW = (5353.70, 5460.77, 5569.99, 5681.39, 5795.02, 5910.92)
WACC, GROWTH = 0.07, 0.02


def _entity_values() -> dict[str, float]:
    series, a = ms_flow_series(), ms_assumptions()
    return {
        name: fn(series, a, nfl=MS_NFL, nci=MS_NCI).entity_value
        for name, fn in (("fcfvm", value_fcfvm), ("revm", value_revm), ("aegm", value_aegm))
    }


def _random_series(rng: random.Random) -> tuple[FlowSeries, Assumptions]:
    """An internally consistent operating series: NOA grows at g, OI keeps a
    constant margin over opening NOA, so free cash flow is positive and all
    three models value the same economics."""
    g = rng.uniform(0.0, 0.29)
    r = rng.uniform(g + 0.005, 0.30)
    noa0 = rng.uniform(10.0, 5000.0)
    margin = rng.uniform(0.001, 0.30)
    oi1 = (g + margin) * noa0
    horizon = rng.randint(1, 8)
    noa = tuple(noa0 * (1.0 + g) ** t for t in range(horizon + 1))
    oi = (oi1 / (1.0 + g),) + tuple(oi1 * (1.0 + g) ** (t - 1) for t in range(1, horizon + 1))
    labels = tuple(str(t) for t in range(horizon + 1))
    series = FlowSeries(labels=labels, operating_income=oi, net_operating_assets=noa)
    return series, Assumptions(sales_growth=g, wacc=r, horizon=horizon)


@pytest.mark.criterion(1, "method-1 free cash flow reproduces the printed row within 0.01")
def test_criterion_1_fcf_series():
    printed = tuple(float(cell) for cell in PRINTED_METHOD1["free_cash_flow"])
    assert printed == (339.77, 346.55, 353.49, 360.56, 367.77)
    for t in range(5):
        fcf = fcf_method1(OI_ROW[t], NOA_ROW[t], NOA_ROW[t + 1])
        assert abs(fcf - printed[t]) <= 0.01, (FORECAST_LABELS[t], fcf)


@pytest.mark.criterion(2, "residual operating income reproduces the printed row within 0.01")
def test_criterion_2_roi_series():
    printed = tuple(float(cell) for cell in PRINTED_REVM["roi"])
    assert printed == (72.08, 73.52, 74.99, 76.49, 78.02)
    for t in range(5):
        roi = residual_operating_income(OI_ROW[t], NOA_ROW[t], WACC)
        assert abs(roi - printed[t]) <= 0.01, (FORECAST_LABELS[t], roi)


@pytest.mark.xfail(
    strict=True,
    reason="367.77*1.02/0.05 is 7502.51, not the printed 7501.51; the printed "
    "figure cannot be reproduced from its own stated operands (see the "
    "reconciliation report's fcfvm.cv row)",
)
@pytest.mark.criterion(3, "continuing values recompute from their printed operands within 0.01")
def test_criterion_3_continuing_value_fcf():
    cv = continuing_value(367.77, GROWTH, WACC)
    assert abs(cv - 7501.51) <= 0.01


@pytest.mark.criterion(3, "continuing values recompute from their printed operands within 0.01")
def test_criterion_3_continuing_value_roi():
    cv = continuing_value(78.02, GROWTH, WACC)
    assert abs(cv - 1591.61) <= 0.01
    # The companion figure's true replay value, for the record: the printed
    # 7501.51 sits 1.00 away from what its operands give.
    assert abs(continuing_value(367.77, GROWTH, WACC) - 7502.508) <= 0.001


@pytest.mark.criterion(4, "three models agree within 1.0 in [6790, 6800]; printed 6945.31 is errata at ~2.2%")
def test_criterion_4_three_model_equivalence():
    env = _entity_values()
    values = list(env.values())
    for i in range(3):
        for j in range(i + 1, 3):
            assert abs(values[i] - values[j]) <= 1.0, env
    for value in values:
        assert 6790.0 <= value <= 6800.0, env

    report = build_report("ms")
    row = next(r for r in report.rows if r.location == "headline.entity_value")
    assert row.printed == "6945.31"
    assert row.classification == "errata"
    assert row.rel_deviation is not None and 0.020 <= row.rel_deviation <= 0.024


@pytest.mark.criterion(5, "per-share value lands in [3.06, 3.09], consistent with the stated 3.08")
def test_criterion_5_per_share():
    for env in _entity_values().values():
        per_share = (env - MS_NFL - MS_NCI) / MS_SHARES_STATED
        assert 3.06 <= per_share <= 3.09, per_share


@pytest.mark.criterion(6, "1000 random consistent series: models within 1e-6 relative; AEG=dRE, AOIG=dROI within 1e-9")
def test_criterion_6_randomized_equivalence():
    rng = random.Random(7)
    for _ in range(1000):
        series, a = _random_series(rng)
        env = [
            fn(series, a).entity_value for fn in (value_fcfvm, value_revm, value_aegm)
        ]
        scale = max(abs(v) for v in env)
        assert max(env) - min(env) <= 1e-6 * scale, (env, a)

        # AOIG identity on the same series: the abnormal growth of period t
        # equals the change in residual operating income.
        r = a.wacc
        fcf = series.free_cash_flow()
        for t in range(2, a.horizon + 1):
            oi, noa = series.operating_income, series.net_operating_assets
            lhs = aoig(oi[t], oi[t - 1], fcf[t - 2], r)
            roi_t = residual_operating_income(oi[t], noa[t - 1], r)
            roi_prev = residual_operating_income(oi[t - 1], noa[t - 2], r)
            assert abs(lhs - (roi_t - roi_prev)) <= 1e-9

        # AEG identity on a clean-surplus equity series drawn alongside.
        b = rng.uniform(10.0, 5000.0)
        book = [b]
        earn, div = [], []
        for _ in range(4):
            earn.append(rng.uniform(-0.1, 0.3) * b)
            div.append(rng.uniform(0.0, 0.1) * b)
            book.append(book[-1] + earn[-1] - div[-1])
        for t in range(1, 4):
            lhs = aeg(earn[t], earn[t - 1], div[t - 1], r)
            re_t = residual_earnings(earn[t], book[t], r)
            re_prev = residual_earnings(earn[t - 1], book[t - 1], r)
            assert abs(lhs - (re_t - re_prev)) <= 1e-9


@pytest.mark.criterion(7, "continuing value matches a 100,000-term explicit sum within 1e-9 relative")
def test_criterion_7_perpetuity_vs_explicit_sum():
    rng = random.Random(11)
    for _ in range(100):
        g = rng.uniform(0.0, 0.29)
        r = rng.uniform(g + 0.005, 0.30)
        flow = rng.uniform(0.1, 1000.0)
        cv = continuing_value(flow, g, r)
        q = (1.0 + g) / (1.0 + r)
        total, qpow = 0.0, 1.0
        for _ in range(100_000):
            qpow *= q
            total += flow * qpow
        assert abs(cv - total) <= 1e-9 * abs(total), (flow, g, r)


@pytest.mark.criterion(8, "rate-grid table replays: EnV = PV + CV, EqV = EnV - 1773.80, percent changes, CV ratio")
def test_criterion_8_sensitivity_table_replay():
    ps = PRINTED_SENSITIVITY
    base = SENSITIVITY_COLUMNS.index("wacc=7%")
    base_env = float(ps["entity_value"][base])
    base_eqv = float(ps["equity_value"][base])
    for j, _col in enumerate(SENSITIVITY_COLUMNS):
        pv = float(ps["pv_explicit"][j])
        cv = float(ps["cv"][j])
        env = float(ps["entity_value"][j])
        eqv = float(ps["equity_value"][j])
        assert abs((pv + cv) - env) <= 0.01 + 1e-9
        assert abs((env - 1773.80) - eqv) <= 1e-9
        env_pct = (env - base_env) / base_env * 100.0
        eqv_pct = (eqv - base_eqv) / base_eqv * 100.0
        assert abs(env_pct - float(ps["env_change_pct"][j])) <= 0.01 + 1e-9
        assert abs(eqv_pct - float(ps["eqv_change_pct"][j])) <= 0.01 + 1e-9

    # Structural continuing-value ratio for the lower-rate column: closing
    # the rate gap from 5% to 4% scales CV by (0.05/0.04)*(1.07/1.06)^5.
    printed_ratio = float(ps["cv"][0]) / float(ps["cv"][1])
    closed_form = (0.05 / 0.04) * (1.07 / 1.06) ** 5
    assert abs(printed_ratio / closed_form - 1.0) <= 0.001


@pytest.mark.criterion(9, "comparables table replays exactly; recomputed harmonic means flagged as deviating")
def test_criterion_9_comparables_replay():
    assert central_multiple((10.6, 11.0), "median") == 10.8
    assert central_multiple((1.0, 0.6), "median") == 0.8

    result = run_comps(
        {"ebit": MS_EBIT, "sales": MS_SALES},
        nfl=MS_NFL,
        nci=MS_NCI,
        shares=MS_SHARES_COMPS,
        comparables=ms_comparables(),
        supplied=MS_SUPPLIED_MULTIPLES,
    )
    printed = PRINTED_COMPS
    by_key = {(row.driver, row.method): row for row in result.rows}
    for i, key in enumerate((("ebit", "median"), ("ebit", "harmonic_mean"),
                             ("sales", "median"), ("sales", "harmonic_mean"))):
        row = by_key[key]
        assert row.multiple == MS_SUPPLIED_MULTIPLES[key]
        assert abs(row.entity_value - float(printed["entity_value"][i])) <= 0.01
        assert abs(row.equity_value - float(printed["equity_value"][i])) <= 0.01
        assert abs(row.per_share - float(printed["per_share"][i])) <= 0.01
    assert abs(result.average_entity_value - 7879.92) <= 0.01
    assert abs(result.average_equity_value - 6106.13) <= 0.01
    assert abs(result.average_per_share - 3.80) <= 0.01

    # The printed harmonic means do not follow from the printed peer
    # multiples; the recomputed ones round to 10.80 and 0.75.
    ebit_h = by_key[("ebit", "harmonic_mean")]
    sales_h = by_key[("sales", "harmonic_mean")]
    assert round(ebit_h.computed_multiple, 2) == 10.80 and ebit_h.deviates
    assert round(sales_h.computed_multiple, 2) == 0.75 and sales_h.deviates
    assert not by_key[("ebit", "median")].deviates
    assert not by_key[("sales", "median")].deviates


@pytest.mark.criterion(10, "closed-form dynamics value matches a 10,000-term truncation; limiting and weighted forms hold")
def test_criterion_10_lim_closed_forms():
    rng = random.Random(13)
    for _ in range(40):
        rho = 1.0 + rng.uniform(0.02, 0.25)
        p = OhlsonParams(
            omega1=rng.uniform(0.0, 0.95), gamma1=rng.uniform(0.0, 0.95), rho_e=rho
        )
        b = rng.uniform(10.0, 500.0)
        re = rng.uniform(-20.0, 20.0)
        v = rng.uniform(-5.0, 5.0)

        pv, re_t, v_t = 0.0, re, v
        disc = 1.0
        for _ in range(10_000):
            re_t, v_t = ohlson_step(re_t, v_t, p)
            disc *= rho
            pv += re_t / disc
        closed = ohlson_value(b, re, v, p)
        assert abs(closed - (b + pv)) <= 1e-8 * max(1.0, abs(b + pv))

    # omega1 = 0: residual earnings carry no weight, value = B + alpha2 * v.
    p0 = OhlsonParams(omega1=0.0, gamma1=0.4, rho_e=1.1)
    _, a2 = ohlson_coefficients(p0)
    assert ohlson_value(100.0, 12.3, 2.5, p0) == 100.0 + a2 * 2.5

    # Alpha form and weighted-average form coincide under clean surplus.
    rng = random.Random(17)
    for _ in range(200):
        rho = 1.0 + rng.uniform(0.02, 0.25)
        p = OhlsonParams(
            omega1=rng.uniform(0.0, 0.95), gamma1=rng.uniform(0.0, 0.95), rho_e=rho
        )
        b_prev = rng.uniform(10.0, 500.0)
        earn = rng.uniform(-50.0, 80.0)
        d = rng.uniform(0.0, 30.0)
        b = b_prev + earn - d
        re = residual_earnings(earn, b_prev, rho - 1.0)
        v = rng.uniform(-5.0, 5.0)
        alpha_form = ohlson_value(b, re, v, p)
        weighted_form = ohlson_value_weighted(b, earn, d, v, p)
        assert abs(alpha_form - weighted_form) <= 1e-12 * max(1.0, abs(alpha_form))


@pytest.mark.criterion(11, "first-digit law: pmf(1)=0.30103, pmf sums to 1; uniform flagged, log-uniform passes")
def test_criterion_11_benford():
    pmf = benford_pmf()
    assert abs(pmf[0] - 0.30103) <= 1e-5
    assert math.fsum(pmf) == 1.0
    assert sum(pmf) == 1.0

    uniform = [float(d) for d in range(1, 10)] * 12
    assert benford_screen(uniform).verdict == "nonconforming"

    rng = random.Random(20260817)
    log_uniform = [10.0 ** rng.uniform(0.0, 6.0) for _ in range(10_000)]
    assert benford_screen(log_uniform).verdict == "conforming"


@pytest.mark.criterion(12, "entity value strictly decreases in the discount rate and increases in growth")
def test_criterion_12_monotonicity():
    rng = random.Random(7)
    for _ in range(25):
        series, a = _random_series(rng)
        r, g = a.wacc, a.sales_growth
        wacc_axis = sorted({g + 0.004 + rng.uniform(0.001, 0.3) for _ in range(5)} | {r})
        growth_axis = sorted({rng.uniform(0.0, r - 0.002) for _ in range(5)} | {g})
        grid = sensitivity_grid(
            series, a, wacc_values=tuple(wacc_axis), growth_values=tuple(growth_axis)
        )
        wacc_cells = [c for c in grid.cells if c.axis == "wacc"]
        growth_cells = [c for c in grid.cells if c.axis == "growth"]
        assert all(c.valid for c in wacc_cells + growth_cells)
        for a_cell, b_cell in zip(wacc_cells, wacc_cells[1:]):
            assert b_cell.entity_value < a_cell.entity_value, (a_cell, b_cell)
        for a_cell, b_cell in zip(growth_cells, growth_cells[1:]):
            assert b_cell.entity_value > a_cell.entity_value, (a_cell, b_cell)
