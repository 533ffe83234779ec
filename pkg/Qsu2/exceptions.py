"""
Exception hierarchy shared by the hopf, calculus, circle and console apps.

Each error carries the exit code the management commands report for it:
1 for a failed assertion, 2 for bad input, 3 for pole/backend failures.
"""


class Qsu2Error(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 1


class PoleError(Qsu2Error):
    """A denominator vanishes at the requested evaluation point."""

    exit_code = 3


class BackendError(Qsu2Error):
    """Exact and numeric values were mixed, or a backend is unavailable."""

    exit_code = 3


class UnpairedRootError(BackendError):
    """A square-root prefactor survived where an exact value is required."""


class DimensionMismatchError(Qsu2Error):
    exit_code = 2


class SymbolKindError(Qsu2Error):
    """The symbol has the wrong entry kind or lacks a required structure."""

    exit_code = 2


class InconsistentRatioError(Qsu2Error):
    """Gram values of a corepresentation do not factor as a ratio pattern."""

    exit_code = 1


class RowSumError(Qsu2Error):
    exit_code = 2


class TailNotInvertibleError(Qsu2Error):
    exit_code = 2


class ConfigurationError(Qsu2Error):
    exit_code = 2


class ExpressionSyntaxError(Qsu2Error):
    """Raised by the expression parser; ``position`` is a character offset."""

    exit_code = 2

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ExponentOverflowError(ExpressionSyntaxError):
    pass


class CheckFailed(Qsu2Error):
    exit_code = 1
