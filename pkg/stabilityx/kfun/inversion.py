"""Inversion of strictly increasing scalar maps."""

import logging
import math

from stabilityx.types import ScalarMap

from .exceptions import OutOfRangeError

logger = logging.getLogger(__name__)

MAX_BISECTIONS = 128
MAX_NEWTON_STEPS = 8
MAX_DOUBLINGS = 128


def invert(
    f: ScalarMap,
    y: float,
    tol: float = 1e-12,
    *,
    derivative: ScalarMap | None = None,
    bracket: tuple[float, float] | None = None,
) -> float:
    """Solve ``f(x) = y`` for a strictly increasing ``f`` on ``[0, inf)``.

    The upper end of the bracket ``[0, 1]`` is doubled until it encloses ``y``;
    bisection then narrows the bracket and at most eight Newton steps polish
    the root when a derivative is available.

    Returns:
        ``x`` with ``|f(x) - y| <= tol * (1 + |y|)`` whenever the arithmetic
        allows it; otherwise the midpoint of the tightest bracket found.

    Raises:
        OutOfRangeError: If ``y`` is negative, not finite, or cannot be bracketed.
    """
    if not math.isfinite(y) or y < 0.0:
        msg = f"Cannot invert at y={y}"
        raise OutOfRangeError(msg)
    if y == 0.0:
        return 0.0

    target = tol * (1.0 + abs(y))
    lo, hi = bracket if bracket is not None else (0.0, 1.0)
    doublings = 0
    while f(hi) < y:
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > MAX_DOUBLINGS or not math.isfinite(hi):
            msg = f"No bracket for y={y} after {doublings} doublings"
            raise OutOfRangeError(msg)

    x = 0.5 * (lo + hi)
    for _ in range(MAX_BISECTIONS):
        x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx - y) <= target or x in {lo, hi}:
            break
        if fx < y:
            lo = x
        else:
            hi = x

    if derivative is not None:
        for _ in range(MAX_NEWTON_STEPS):
            residual = f(x) - y
            if abs(residual) <= target:
                break
            slope = derivative(x)
            if not slope > 0.0 or not math.isfinite(slope):
                break
            step = x - residual / slope
            # Newton may only move inside the last known bracket
            if not lo <= step <= hi:
                break
            x = step

    logger.debug("Inversion DONE; y=%s x=%s doublings=%s", y, x, doublings)
    return x
