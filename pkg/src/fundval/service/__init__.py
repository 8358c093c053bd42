"""HTTP facade over the valuation core."""

from .app import create_app

__all__ = ["create_app"]
