"""Exception hierarchy shared across the package."""


class StochOrderError(Exception):
    """Base class for all package errors."""


class DimensionError(StochOrderError, ValueError):
    """Vector lengths do not agree."""


class ParameterError(StochOrderError, ValueError):
    """A parameter is outside its documented range."""


class DomainError(StochOrderError, ValueError):
    """An input lies outside the domain of a map."""


class OrderError(StochOrderError, ValueError):
    """A required vector-order precondition does not hold."""


class NumericError(StochOrderError, RuntimeError):
    """A numerical routine produced non-finite values or failed to converge."""


class InternalError(StochOrderError, RuntimeError):
    """A postcondition that must hold on valid inputs was violated (a bug)."""
