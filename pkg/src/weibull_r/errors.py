"""Exception hierarchy.

Two broad classes matter to callers (and to the CLI's exit codes): usage-type
errors (bad arguments, points outside a support) derive from ``ValueError``;
numerical failures (divergent integrals, destroyed precision, exhausted
iteration budgets) derive from :class:`NumericalError`.
"""


class WeibullRError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WeibullRError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(WeibullRError, ValueError):
    """A distribution or fit parameter violates its constraints."""


class NumericalError(WeibullRError, ArithmeticError):
    """A computation could not be completed to the requested accuracy."""


class DivergenceError(NumericalError):
    """An integral appears to diverge.  Carries the last two estimates."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = tuple(estimates) if estimates is not None else None


class CancellationError(NumericalError):
    """Alternating-series cancellation destroyed the result's precision."""


class ConvergenceError(NumericalError):
    """An iteration or subdivision budget was exhausted before convergence."""


class SeriesDomainError(WeibullRError, ValueError):
    """A series was requested outside the region where it converges."""


class FitError(NumericalError):
    """No optimizer start produced a finite log-likelihood."""
