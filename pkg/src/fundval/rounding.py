"""Half-up decimal rounding, shared by the renderer and the rounded-factor mode.

Python's built-in round() is banker's rounding; financial tables round
half away from zero, so 2.675 must print as 2.68.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

__all__ = ["round_half_up"]


def round_half_up(value: float, places: int = 2) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
