"""Sampled checks of comparison-function properties."""

import math
from collections.abc import Iterable

import numpy as np

from .models import MonotoneScalarFn


def default_grid() -> np.ndarray:
    """The 1000-point logarithmic grid over ``[1e-6, 1e3]``."""
    return np.geomspace(1e-6, 1e3, 1000)


def is_strictly_increasing(f: MonotoneScalarFn, grid: Iterable[float] | None = None) -> bool:
    """Check ``s1 < s2 => f(s1) < f(s2)`` on a sorted positive grid.

    Values are compared through :meth:`MonotoneScalarFn.log_value`, so
    functions that leave the double range still compare correctly.
    """
    values = np.array([f.log_value(s) for s in (default_grid() if grid is None else grid) if s > 0.0])
    return bool(np.all(np.diff(values) > 0.0))


def is_unbounded(f: MonotoneScalarFn, bound: float = 1e12, max_doublings: int = 256) -> bool:
    """Doubling search for an argument where ``f`` exceeds ``bound``."""
    s = 1.0
    for _ in range(max_doublings):
        value = f(s)
        if value > bound:
            return True
        if not math.isfinite(s):
            break
        s *= 2.0
    return False


def check_gamma_property(gamma: MonotoneScalarFn, grid: Iterable[float] | None = None) -> float:
    """Return ``min_s gamma(s) / (s gamma'(s))`` over the grid.

    The level profile is admissible when the result is at least ``1 - 1e-9``.
    """
    worst = math.inf
    for s in default_grid() if grid is None else grid:
        if s <= 0.0:
            continue
        slope = gamma.deriv(s)
        ratio = math.inf if slope == 0.0 else gamma(s) / (s * slope)
        worst = min(worst, ratio)
    return worst
