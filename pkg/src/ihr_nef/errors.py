"""Exception types shared across the package."""


class IhrError(Exception):
    """Base class for all package errors."""


class DomainError(IhrError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(IhrError, ArithmeticError):
    """An iterative method failed to reach its tolerance."""
