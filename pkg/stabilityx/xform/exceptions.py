"""Custom exception classes for coordinate changes."""

from stabilityx.exceptions import StabilityXError


class TransformError(StabilityXError):
    """Base exception for coordinate-change errors."""


class GammaPropertyViolatedError(TransformError):
    """Raised when a level profile violates ``gamma(s) / gamma'(s) >= s``."""


class NormalFormError(TransformError):
    """Raised when the trajectory-based normal form cannot be built."""


class BackwardBlowupError(NormalFormError):
    """Raised when backward transport does not reach the reference level."""


class NotClassKInfinityError(NormalFormError):
    """Raised when the transported level function stays bounded."""
