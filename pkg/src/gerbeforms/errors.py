"""Exception types shared across the package."""

from __future__ import annotations


class GerbeFormsError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(GerbeFormsError, ValueError):
    """Operands have incompatible dimension, size, degree, side or index."""


class MalformedFormError(GerbeFormsError, ValueError):
    """A combinatorial form is not trivial on degenerate simplices."""


class CheckRefused(GerbeFormsError):
    """An operation refused to run because an upstream check failed."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParseError(GerbeFormsError, ValueError):
    """Syntax error in a polynomial, matrix, form or dataset literal."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.reason = message
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += " (expected " + " or ".join(expected) + ")"
        super().__init__(text)


class DatasetError(GerbeFormsError, ValueError):
    """Semantically invalid dataset: missing inverse, bad index, size mismatch."""

    def __init__(self, message: str, section: str | None = None):
        self.section = section
        super().__init__(f"[{section}] {message}" if section else message)


class RejectedInputError(GerbeFormsError, ValueError):
    """Input violates an operation's precondition (not a shape problem)."""
