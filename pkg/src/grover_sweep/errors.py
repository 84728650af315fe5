"""Exception types raised across the package."""


class GroverSweepError(Exception):
    """Base class for all package errors."""


class SizeError(GroverSweepError, ValueError):
    """Qubit count out of range or mismatched dimensions."""


class DomainError(GroverSweepError, ValueError):
    """Match count or list size outside the admissible range."""


class UndefinedAngleError(DomainError):
    """Raised when M = 0: no rotation angle exists without a match."""


class DivergenceError(DomainError):
    """Raised when a quantity is infinite at the requested point (M = N)."""


class OutOfValidityError(DomainError):
    """The cost model does not apply (M > 3N/4)."""


class DimacsParseError(GroverSweepError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
