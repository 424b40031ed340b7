"""Custom exception classes for Lyapunov-function machinery."""

import numpy as np

from stabilityx.exceptions import StabilityXError


class LyapunovError(StabilityXError):
    """Base exception for Lyapunov-function errors."""


class LevelFloorHitError(LyapunovError):
    """Raised when a flow target lies below the level floor."""


class StiffFlowError(LyapunovError):
    """Raised when the normalized gradient flow cannot be integrated."""


class NotStarShapedError(LyapunovError):
    """Raised when a level set is not star-shaped with respect to the origin.

    Attributes:
        witness: The sampled point where ``<grad V(x), x> <= 0``.
    """

    def __init__(self, message: str, witness: np.ndarray) -> None:
        """Store the failing sample alongside the message."""
        super().__init__(message)
        self.witness = witness
