"""First-digit distribution screen."""

import math
import random

import pytest

from fundval.benford import (
    CHI2_CRITICAL_8DF_95,
    MAD_THRESHOLD,
    benford_pmf,
    benford_screen,
    leading_digit,
)
from fundval.errors import InputError
from fundval.fixtures import ms_statement_values


def test_pmf_shape():
    pmf = benford_pmf()
    assert len(pmf) == 9
    assert all(a > b for a, b in zip(pmf, pmf[1:]))  # strictly decreasing
    assert math.fsum(pmf) == 1.0
    assert sum(pmf) == 1.0
    assert abs(pmf[0] - 0.3010299956639812) < 1e-15


@pytest.mark.parametrize(
    "value, digit",
    [
        (1.0, 1),
        (0.00123, 1),
        (-45.6, 4),
        (9.999, 9),
        (7e300, 7),
        (3.2e-300, 3),
    ],
)
def test_leading_digit(value, digit):
    assert leading_digit(value) == digit


def test_leading_digit_rejects_zero_and_nonfinite():
    for bad in (0.0, float("inf"), float("-inf"), float("nan")):
        with pytest.raises(InputError):
            leading_digit(bad)


def test_screen_counts_and_frequencies():
    values = [1.0, 12.0, 150.0, 2.0, 25.0, 3.0, 9.0, 0.0]  # zero is skipped
    result = benford_screen(values, min_sample=5)
    assert result.n == 7
    assert result.counts == (3, 2, 1, 0, 0, 0, 0, 0, 1)
    assert math.fsum(result.observed) == pytest.approx(1.0, abs=1e-12)
    assert result.verdict in ("conforming", "nonconforming")


def test_screen_insufficient_sample():
    result = benford_screen([1.0, 2.0, 3.0])
    assert result.verdict == "insufficient-sample"
    assert result.chi2 is None and result.mad is None
    assert result.conforming is None


def test_screen_thresholds_exported():
    assert CHI2_CRITICAL_8DF_95 == 15.507
    assert MAD_THRESHOLD == 0.015


def test_uniform_digits_nonconforming():
    result = benford_screen([float(d) for d in range(1, 10)] * 12)
    assert result.verdict == "nonconforming"
    assert result.chi2 > CHI2_CRITICAL_8DF_95


def test_log_uniform_conforming_and_scale_invariant():
    rng = random.Random(20260817)
    sample = [10.0 ** rng.uniform(0.0, 6.0) for _ in range(10_000)]
    base = benford_screen(sample)
    assert base.verdict == "conforming"
    for factor in (7.0, 0.001, 3.7e5):
        scaled = benford_screen([v * factor for v in sample])
        assert scaled.verdict == "conforming"


def test_bundled_statement_values_are_too_few_to_judge():
    values = ms_statement_values()
    assert len(values) == 12
    assert benford_screen(values).verdict == "insufficient-sample"


def test_screen_input_validation():
    with pytest.raises(InputError):
        benford_screen([1.0, float("nan")])
    with pytest.raises(InputError):
        benford_screen([1.0], min_sample=0)
