"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class CoprimalityLabError(Exception):
    """Base class for all package errors."""


class UsageError(CoprimalityLabError, ValueError):
    """A caller violated a precondition (mismatched tables, zero input, ...)."""


class NonDivisible(CoprimalityLabError, ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


class DegreeDrop(CoprimalityLabError):
    """A specialization lost the leading coefficient in the kept variable."""


class RetryPrime(CoprimalityLabError):
    """The chosen prime is unsuitable (divides a leading coefficient, ...)."""


class NotLaurent(CoprimalityLabError):
    """A rational function has a denominator that is not a unit."""


class SingularEvolution(CoprimalityLabError, ZeroDivisionError):
    """A recurrence or lattice step divided by something identically zero."""

    def __init__(self, where, message: str | None = None):
        self.where = where
        super().__init__(message or f"singular evolution at {where}")


class OrbitZeroDivision(CoprimalityLabError, ZeroDivisionError):
    """A numeric orbit hit a zero denominator at step ``n``."""

    def __init__(self, n, message: str | None = None):
        self.n = n
        super().__init__(message or f"division by zero at step {n}")


class ParseError(UsageError):
    """Malformed recurrence or polynomial text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ConfigError(UsageError):
    """Invalid experiment configuration."""


class SchemaMismatch(CoprimalityLabError):
    """Two reports with different schema versions were compared."""
