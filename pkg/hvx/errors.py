"""
Exception types raised by the hvx library.

Every error derives from HvxError and from the builtin it specialises, so
callers may catch either.
"""

from typing import Optional


class HvxError(Exception):
    """Base class for all hvx errors."""


class InvalidPointError(HvxError, ValueError):
    """A coordinate vector is not finite or has fewer than two objectives."""


class DimensionMismatchError(HvxError, ValueError):
    """Two operands do not share the same number of objectives."""


class PolicyViolationError(HvxError, ValueError):
    """A point violates the strict reference-point policy."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class MembershipError(HvxError, ValueError):
    """An update was asked to add a present point or remove an absent one."""


class NondominanceError(HvxError, ValueError):
    """A fast path that requires a nondominated point set received dominated points."""


class EmptyFrontError(HvxError, ValueError):
    """An operation that needs at least one point received an empty front."""


class BudgetExceededError(HvxError, RuntimeError):
    """An exact enumeration would exceed its configured budget."""

    def __init__(self, message: str, required: Optional[float] = None, budget: Optional[float] = None):
        super().__init__(message)
        self.required = required
        self.budget = budget
