"""Exception types and warning categories shared across the package."""

from __future__ import annotations


class QwspecError(Exception):
    """Base class for every error raised by this package."""


class InputError(QwspecError):
    """Invalid user input: graph files, weights, model files.  CLI exit code 2."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(InputError):
    """Malformed graph or model document."""


class DuplicateEdge(InputError):
    """The same undirected edge appears more than once."""


class SelfLoopForbidden(InputError):
    """An edge joins a vertex to itself; the arc-reversal pairing excludes these."""


class IsolatedVertex(InputError):
    """A declared vertex has no incident edge."""


class DimensionMismatch(InputError):
    """Operands live in incompatible spaces."""


class AssumptionViolated(InputError):
    """Supplied operators break the row-isometry or shift requirements."""

    def __init__(self, message: str, residual: float):
        self.residual = float(residual)
        super().__init__(f"{message} (residual {self.residual:.6e})")


class ModelInvariantViolation(InputError):
    """A derived operator identity fails beyond the build tolerance."""

    def __init__(self, identity: str, residual: float):
        self.identity = identity
        self.residual = float(residual)
        super().__init__(f"{identity} residual {self.residual:.6e} exceeds tolerance")


class NumericalError(QwspecError):
    """Numerical computation failed or left its supported regime.  CLI exit code 3."""


class DomainError(NumericalError):
    """Argument outside the mathematical domain of the map."""


class OutOfRange(NumericalError):
    """Value outside the self-adjoint-contraction regime the theory assumes."""


class EigenresidualError(NumericalError):
    """A constructed eigenvector fails its residual check."""


class ConnectivityWarning(UserWarning):
    """Counting formulas assume a connected graph; results are flagged, not blocked."""


class RegimeWarning(UserWarning):
    """Model parameters fall outside the implicit contraction regime."""
