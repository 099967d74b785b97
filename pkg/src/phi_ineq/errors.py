"""Exception types shared across the package.

Builtin ``OverflowError`` is reused for Gamma overflow; everything else
derives from :class:`PhiIneqError` so callers can catch library failures
with a single except clause.
"""


class PhiIneqError(Exception):
    """Base class for all library-specific errors."""


class DomainError(PhiIneqError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonIntegrableError(DomainError):
    """The requested integral diverges (e.g. complete Beta with a
    nonpositive second parameter)."""


class DivergenceError(DomainError):
    """A series or limit evaluation diverges (e.g. 2F1 at z=1 with
    c - a - b <= 0)."""


class ToleranceNotMet(PhiIneqError, RuntimeError):
    """Adaptive integration exhausted its subdivision budget before
    reaching the requested tolerance."""

    def __init__(self, message, value=None, err_estimate=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate


class NonFiniteSample(PhiIneqError, ValueError):
    """An integrand returned a non-finite value at an interior point."""


class UsageError(PhiIneqError):
    """Invalid command-line or config-file input (exit code 2)."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
