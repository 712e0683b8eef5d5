"""Exception types raised across the package."""


class QStirlingError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QStirlingError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RegimeError(QStirlingError, ValueError):
    """A closed-form approximation was evaluated outside its validity regime."""


class ConvergenceError(QStirlingError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance."""


class DegenerateStateError(QStirlingError, ValueError):
    """The reverse variance bound is undefined for this state (zero variance
    or vanishing denominator)."""


class DegenerateCycleError(QStirlingError, ValueError):
    """The cycle is degenerate (equal bath temperatures): efficiency undefined."""


class TruncationError(QStirlingError, ValueError):
    """The truncated basis is too small for the requested computation."""
