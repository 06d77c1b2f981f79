"""Exception hierarchy shared by all modules."""


class PolyslopeError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(PolyslopeError, ValueError):
    pass


class SingularMatrixError(PolyslopeError, ValueError):
    pass


class InexactDivisionError(PolyslopeError, ArithmeticError):
    pass


class ResourceError(PolyslopeError, RuntimeError):
    """Raised when a computation would exceed a configured work budget."""

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class RangeError(PolyslopeError, ValueError):
    pass


class GeometryError(PolyslopeError, ValueError):
    """Unsupported polytope shape (e.g. a non-simplicial facet)."""


class InvalidHodgeError(PolyslopeError, ValueError):
    pass


class SpecError(PolyslopeError, ValueError):
    """Malformed or invalid family specification."""
