"""Exception types shared across the solvers."""


class GsvdError(Exception):
    """Base class for numerical failures raised by this package."""


class BreakdownError(GsvdError):
    """A vector vanished (numerically) during orthogonalization/normalization.

    Carries the offending vector and any accumulated projection coefficients
    so that callers can recover (e.g. restart with a fresh direction).
    """

    def __init__(self, message, vector=None, coeffs=None):
        super().__init__(message)
        self.vector = vector
        self.coeffs = coeffs


class NotRegularError(GsvdError):
    """The stacked matrix [A; B] is numerically rank deficient."""


class SemiDefiniteError(GsvdError):
    """A pencil expected to be symmetric definite is only semi-definite."""


class NotCsPairError(GsvdError):
    """The two projected matrices do not stack to orthonormal columns."""


class NonConvergenceError(GsvdError):
    """Iteration limit reached.  Carries the best iterate computed so far."""

    def __init__(self, message, x=None, iterations=0):
        super().__init__(message)
        self.x = x
        self.iterations = iterations
