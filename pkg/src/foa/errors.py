"""Exception types raised by the solver library."""


class FoaError(Exception):
    """Base class for all library errors."""


class DegenerateGeometry(FoaError):
    """Raised when a geometric quantity is undefined (collinear points, coincident cameras)."""


class InvalidRange(FoaError):
    """Raised when an interval or scale parameter is empty or non-positive."""


class InvalidInstance(FoaError):
    """Raised when an instance is malformed (wrong counts, non-finite values)."""


class InstanceTooLarge(FoaError):
    """Raised when the exact oracle is asked to enumerate beyond its cap."""


class ConstraintViolated(FoaError):
    """Raised when bucket maps do not satisfy their capacity constraints."""


class BudgetExceeded(FoaError):
    """Raised (or flagged on a report) when an enumeration cap is hit.

    Solvers do not raise this themselves; they return a non-certified report.
    The CLI uses it to map the outcome to exit code 3.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
