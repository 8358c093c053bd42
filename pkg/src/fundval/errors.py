"""Exception taxonomy shared by every module.

Two families only: bad input (cannot be parsed or validated) and bad
numbers (structurally fine input that is numerically inadmissible, such
as a growth rate at or above the discount rate). The CLI maps them to
exit codes 1 and 2 respectively; the service maps them to HTTP 400/422.
"""

from __future__ import annotations

__all__ = ["InputError", "ParseError", "DomainError"]


class InputError(Exception):
    """User-supplied input could not be parsed or validated."""


class ParseError(InputError):
    """A structured input file is malformed.

    Carries the 1-based line number when one is known so CLI and service
    diagnostics can point at the offending row.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DomainError(Exception):
    """Inputs are well-formed but numerically inadmissible."""
