"""Monotone lower and upper envelopes of sampled scalar data."""

import logging
from collections.abc import Sequence
from enum import Enum

import numpy as np

from .exceptions import DegenerateSamplesError
from .models import FunctionClass
from .models import MonotoneScalarFn
from .profile import PowerLawProfile

logger = logging.getLogger(__name__)

# Exponent of the tilt that turns running extrema into strictly monotone nodes
TILT = 1e-3
DEFAULT_RAMP = 1e-9


class EnvelopeSide(str, Enum):
    """Which side of the samples an envelope stays on."""

    LOWER = "lower"
    UPPER = "upper"


def running_min_from_right(knots: np.ndarray, values: np.ndarray, tilt: float = TILT) -> np.ndarray:
    """Largest strictly increasing sequence below ``values`` up to the tilt.

    ``m_i = min(v_i, m_{i+1} (s_i / s_{i+1})^tilt)``.
    """
    result = values.astype(np.float64).copy()
    for i in range(result.size - 2, -1, -1):
        result[i] = min(result[i], result[i + 1] * (knots[i] / knots[i + 1]) ** tilt)
    return result


def running_max_from_left(knots: np.ndarray, values: np.ndarray, tilt: float = TILT) -> np.ndarray:
    """Smallest strictly increasing sequence above ``values`` up to the tilt."""
    result = values.astype(np.float64).copy()
    for i in range(1, result.size):
        result[i] = max(result[i], result[i - 1] * (knots[i] / knots[i - 1]) ** tilt)
    return result


def profile_function(profile: PowerLawProfile, name: str) -> MonotoneScalarFn:
    """Wrap a power-law profile as a K-infinity function."""
    return MonotoneScalarFn(
        fn=profile.value,
        derivative=profile.derivative,
        inverse_fn=profile.inverse,
        function_class=FunctionClass.K_INFINITY,
        name=name,
        log_fn=profile.log_value,
        inverse_log_fn=profile.log_inverse,
    )


def _end_exponents(knots: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    if knots.size == 1:
        return 1.0, 1.0
    low = float(np.log(values[1] / values[0]) / np.log(knots[1] / knots[0]))
    high = float(np.log(values[-1] / values[-2]) / np.log(knots[-1] / knots[-2]))
    return low, high


def monotone_envelope(
    samples: Sequence[tuple[float, float]] | np.ndarray,
    side: EnvelopeSide | str,
    *,
    ramp: float = DEFAULT_RAMP,
    name: str | None = None,
) -> MonotoneScalarFn:
    """Fit a K-infinity function below or above sampled ``(s, v)`` pairs.

    The lower envelope keeps the samples with ``v > 0`` and interpolates their
    tilted running minimum from the right. The upper envelope adds the ramp
    ``ramp * s`` to the non-negative parts and interpolates their tilted
    running maximum from the left. Both interpolate by power laws, so they
    stay on their side at every sample and have closed-form inverses.

    Raises:
        DegenerateSamplesError: With fewer than two samples, or when no sample
            of a lower envelope is positive.
    """
    side = EnvelopeSide(side)
    data = np.asarray(samples, dtype=np.float64).reshape(-1, 2)
    if data.shape[0] < 2:
        msg = f"Envelope needs at least two samples, got {data.shape[0]}"
        raise DegenerateSamplesError(msg)
    if np.any(data[:, 0] <= 0.0):
        msg = "Envelope abscissae must be positive"
        raise DegenerateSamplesError(msg)

    order = np.argsort(data[:, 0], kind="stable")
    knots, values = data[order, 0], data[order, 1]
    # Repeated abscissae collapse onto their extreme value
    unique_knots, first = np.unique(knots, return_index=True)
    reducer = np.minimum if side is EnvelopeSide.LOWER else np.maximum
    values = reducer.reduceat(values, first)
    knots = unique_knots

    if side is EnvelopeSide.LOWER:
        keep = values > 0.0
        if not np.any(keep):
            msg = "Lower envelope impossible: every sample is non-positive"
            raise DegenerateSamplesError(msg)
        if not np.all(keep):
            logger.warning("Envelope DROP; non_positive=%s kept=%s", int(np.sum(~keep)), int(np.sum(keep)))
        knots, values = knots[keep], running_min_from_right(knots[keep], values[keep])
    else:
        values = running_max_from_left(knots, np.maximum(values, 0.0) + ramp * knots)

    low, high = _end_exponents(knots, values)
    profile = PowerLawProfile(knots, values, low_exponent=low, high_exponent=high)
    logger.debug("Envelope BUILT; side=%s nodes=%s low=%s high=%s", side.value, knots.size, low, high)
    return profile_function(profile, name or f"{side.value}_envelope")
