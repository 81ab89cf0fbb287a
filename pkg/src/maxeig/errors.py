"""Exception types raised by the solvers."""


class MaxeigError(Exception):
    """Base class for all numeric failures in this package."""


class SingularSystem(MaxeigError):
    """Linear system is singular to working precision.

    ``index`` is the pivot position at which elimination broke down, or
    None when the failure was detected from the residual instead.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ZeroComponent(MaxeigError):
    """A componentwise ratio hit an exactly-zero denominator."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotNormalized(MaxeigError):
    """Vector was expected to have unit norm but does not."""


class PositivityViolation(MaxeigError):
    """An iterate of a safe engine lost strict positivity."""


class RowSumViolation(MaxeigError):
    """A generator-form matrix has a positive row sum."""


class NonpositiveR(MaxeigError):
    """The h-sequence recursion produced a nonpositive factor."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OverflowGuard(MaxeigError):
    """A weight sequence overflows double precision even after rescaling."""


class MatrixFileError(MaxeigError):
    """A matrix file is unreadable or ill-formed."""
