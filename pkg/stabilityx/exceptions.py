"""Custom exception classes for StabilityX."""


class StabilityXError(Exception):
    """Base class for all exceptions in StabilityX."""
