"""Exception types shared across the package."""


class SwrError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SwrError):
    """Invalid, missing or unknown configuration key."""


class DegenerateFrequencyError(SwrError):
    """Spectral quantity requested too close to the degenerate point omega + f = 0."""


class DivisionDegeneracyError(SwrError):
    """Denominator of a convergence-factor ratio is numerically zero."""


class SingularPivotError(SwrError):
    """Tridiagonal elimination hit a singular or overflowing pivot."""


class PicardNoConvergence(SwrError):
    """Picard iteration on the interface friction did not converge."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ZeroJumpError(SwrError):
    """Interface velocity jump is (numerically) zero; the friction
    linearization is undefined there."""
