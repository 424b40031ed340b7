"""Custom exception classes for comparison-function construction."""

from stabilityx.exceptions import StabilityXError


class KFunError(StabilityXError):
    """Base exception for comparison-function errors."""


class NonConvergentError(KFunError):
    """Raised when adaptive quadrature exhausts its subdivision budget."""


class OutOfRangeError(KFunError):
    """Raised when an inversion cannot bracket the requested value."""


class EnvelopeFailureError(KFunError):
    """Raised when a monotone underestimate cannot stay strictly positive."""


class DegenerateSamplesError(KFunError):
    """Raised when samples cannot support the requested envelope."""
