"""
Errors raised by the command-line surface; each maps to one exit code in app.EXIT_CODES.
"""

from typing import Optional

from hvx.errors import HvxError


class FrontFileError(HvxError, ValueError):
    """A front file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PointIndexError(HvxError, IndexError):
    """A --point index does not address a point of the front."""


class MethodMismatchError(HvxError, ValueError):
    """A forced algorithm or solver does not support the front's dimension."""


class GenerationError(HvxError, RuntimeError):
    """An instance generator could not produce enough nondominated points."""
