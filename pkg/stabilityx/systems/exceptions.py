"""Custom exception classes for system models and simulation."""

from stabilityx.exceptions import StabilityXError


class SimulationError(StabilityXError):
    """Base exception for system and simulation errors."""


class BlowupDetectedError(SimulationError):
    """Raised when a trajectory leaves the representable range."""


class UnknownSystemError(SimulationError):
    """Raised when a catalog name is not registered."""


class InvalidSignalError(SimulationError):
    """Raised when a disturbance signal is malformed."""
