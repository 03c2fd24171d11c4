"""Exception types shared across the package."""


class EhrkitError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(EhrkitError, ValueError):
    """Operands have incompatible dimensions."""


class SingularMatrixError(EhrkitError, ZeroDivisionError):
    """A matrix required to be invertible has determinant zero."""

    def __init__(self, message: str = "matrix is singular"):
        super().__init__(message)
        self.determinant = 0


class DegenerateInput(EhrkitError, ValueError):
    """Input point set is not affinely full-dimensional."""


class CapacityError(EhrkitError, ValueError):
    """Input exceeds the desk-scale guards this package is built for."""


class PreconditionError(EhrkitError, ValueError):
    """A checked operation precondition does not hold."""


class InternalConsistencyError(EhrkitError, RuntimeError):
    """A cross-check between two independent computations failed.

    This always signals a bug in the package, never a user error.
    """


class DocumentParseError(EhrkitError, ValueError):
    """A polytope document could not be parsed."""

    def __init__(self, source: str, line: int | None, message: str):
        location = source if line is None else f"{source}:{line}"
        super().__init__(f"{location}: {message}")
        self.source = source
        self.line = line
