"""Custom exception classes for verification and pipelines."""

from stabilityx.exceptions import StabilityXError


class VerificationError(StabilityXError):
    """Base exception for verification errors."""


class MissingSignalError(VerificationError):
    """Raised when a disturbance-driven check receives a trajectory without its signal."""


class InvalidGainError(MissingSignalError):
    """Raised when a gain passed to a check is not of class K-infinity."""


class PipelineStageError(VerificationError):
    """Raised when a pipeline stage fails; the cause is chained."""

    def __init__(self, stage: str, message: str) -> None:
        """Initialize with the failing stage name.

        Args:
            stage: Name of the pipeline stage.
            message: Error description.
        """
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
