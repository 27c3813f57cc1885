"""Exception hierarchy."""


class ToaderBoundsError(Exception):
    """Base class for all package errors."""


class DomainError(ToaderBoundsError, ValueError):
    """Argument outside the domain of the function (includes the K(1) pole)."""


class ConvergenceError(ToaderBoundsError, ArithmeticError):
    """Quadrature did not reach the requested tolerance within its panel budget."""


class StructureError(ToaderBoundsError, ArithmeticError):
    """Sign pattern of the gap function is not one of the admissible shapes."""


class RegimeError(ToaderBoundsError, ValueError):
    """Parameters are outside the regime an operation is defined for."""


class SearchError(ToaderBoundsError, LookupError):
    """A witness scan finished without finding a violation."""
