"""Exception hierarchy."""


class SpinlinkError(Exception):
    """Base class for all library errors."""


class ModeMismatchError(SpinlinkError, ValueError):
    """Exact and float values were combined."""


class AlgebraMismatchError(SpinlinkError, ValueError):
    """Elements of different algebras were combined."""


class ShapeMismatchError(SpinlinkError, ValueError):
    """Matrix shapes are incompatible."""


class TableError(SpinlinkError, ValueError):
    """A structure table is malformed, incomplete or contradictory."""


class TableValidationError(SpinlinkError):
    """A structure table failed the composition-algebra axiom suite."""

    def __init__(self, message: str, failed_checks=None):
        super().__init__(message)
        self.failed_checks = list(failed_checks or [])


class SingularVierbeinError(SpinlinkError, ValueError):
    """The vierbein is not invertible at the evaluation point."""


class UnsupportedSectorError(SpinlinkError, ValueError):
    """Unknown gauge sector label."""
