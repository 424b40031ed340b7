"""Custom exception classes for the command-line front end."""

from stabilityx.exceptions import StabilityXError


class ConfigError(StabilityXError):
    """Raised when a run configuration cannot be read, validated or resolved."""
