"""First-digit frequency screen for reported figures.

Naturally occurring accounting amounts tend to follow the logarithmic
first-digit law; heavily managed or fabricated ones often do not. The
screen compares observed leading-digit frequencies against that law with
a chi-square statistic and a mean absolute deviation, and declines to
judge samples too small to carry either statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError

__all__ = [
    "BenfordResult",
    "CHI2_CRITICAL_8DF_95",
    "MAD_THRESHOLD",
    "MIN_SAMPLE_DEFAULT",
    "benford_pmf",
    "benford_screen",
    "leading_digit",
]

# 95th percentile of chi-square with 8 degrees of freedom.
CHI2_CRITICAL_8DF_95 = 15.507
# Conformity bound on the mean absolute deviation of digit frequencies.
MAD_THRESHOLD = 0.015
MIN_SAMPLE_DEFAULT = 50

DIGITS = tuple(range(1, 10))


def benford_pmf() -> tuple[float, ...]:
    """Expected first-digit frequencies log10(d + 1) - log10(d), d = 1..9.

    Written as a difference so the nine terms telescope and sum to exactly
    1.0 in floating point.
    """
    return tuple(math.log10(d + 1) - math.log10(d) for d in DIGITS)


def leading_digit(value: float) -> int:
    """First significant decimal digit of a nonzero finite value.

    Raises:
        InputError: zero, NaN, or infinite input has no leading digit.
    """
    if not math.isfinite(value) or value == 0:
        raise InputError(f"no leading digit for {value!r}")
    # Scientific notation puts the leading digit first; 15 significant
    # places keeps values like 999.9999... from rounding up a digit early.
    return int(f"{abs(value):.15e}"[0])


@dataclass(frozen=True)
class BenfordResult:
    n: int
    counts: tuple[int, ...]              # observed counts for digits 1..9
    observed: tuple[float, ...]          # observed frequencies
    expected: tuple[float, ...]          # logarithmic-law frequencies
    chi2: float | None
    chi2_critical: float
    mad: float | None
    mad_threshold: float
    min_sample: int
    verdict: str                         # "conforming" | "nonconforming" | "insufficient-sample"

    @property
    def conforming(self) -> bool | None:
        if self.verdict == "insufficient-sample":
            return None
        return self.verdict == "conforming"


def benford_screen(values: Sequence[float], min_sample: int = MIN_SAMPLE_DEFAULT) -> BenfordResult:
    """Screen a set of figures against the first-digit law.

    Zeros are skipped (they have no leading digit); signs and scale are
    ignored. With fewer than min_sample usable values the verdict is
    "insufficient-sample". Otherwise the verdict is "nonconforming" when
    either the chi-square statistic exceeds its 95% critical value or the
    mean absolute deviation exceeds its bound, and "conforming" otherwise.

    Raises:
        InputError: NaN or infinite input, or min_sample < 1.
    """
    if min_sample < 1:
        raise InputError(f"min_sample must be at least 1, got {min_sample}")
    counts = [0] * 9
    for value in values:
        if not math.isfinite(value):
            raise InputError(f"cannot screen non-finite value {value!r}")
        if value == 0:
            continue
        counts[leading_digit(value) - 1] += 1
    n = sum(counts)
    expected = benford_pmf()
    if n < min_sample:
        return BenfordResult(
            n=n,
            counts=tuple(counts),
            observed=tuple(c / n for c in counts) if n else (0.0,) * 9,
            expected=expected,
            chi2=None,
            chi2_critical=CHI2_CRITICAL_8DF_95,
            mad=None,
            mad_threshold=MAD_THRESHOLD,
            min_sample=min_sample,
            verdict="insufficient-sample",
        )
    observed = tuple(c / n for c in counts)
    chi2 = n * math.fsum((o - e) ** 2 / e for o, e in zip(observed, expected))
    mad = math.fsum(abs(o - e) for o, e in zip(observed, expected)) / 9
    nonconforming = chi2 > CHI2_CRITICAL_8DF_95 or mad > MAD_THRESHOLD
    return BenfordResult(
        n=n,
        counts=tuple(counts),
        observed=observed,
        expected=expected,
        chi2=chi2,
        chi2_critical=CHI2_CRITICAL_8DF_95,
        mad=mad,
        mad_threshold=MAD_THRESHOLD,
        min_sample=min_sample,
        verdict="nonconforming" if nonconforming else "conforming",
    )
