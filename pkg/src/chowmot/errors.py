"""Exceptions shared across the package."""


class ExactnessError(ArithmeticError):
    """An internal division left a remainder.

    Every quotient taken anywhere in the package is provably exact; a
    nonzero remainder therefore signals an arithmetic bug, never bad input.
    """


class CapExceededError(ValueError):
    """An enumeration was requested above its configured size cap."""


class CrossCheckError(AssertionError):
    """Two independent computation routes disagreed.

    This is always fatal: the agreement of the routes is the point of the
    computation, so a mismatch is reported with a diff and never resolved
    by picking a side.
    """


class ValidationError(ValueError):
    """An arrangement document violates a structural invariant."""
