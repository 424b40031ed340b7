"""Monotone scalar comparison functions."""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from stabilityx.differentiation import scalar_derivative
from stabilityx.sampling import log_grid
from stabilityx.types import ScalarMap

from .exceptions import DegenerateSamplesError
from .inversion import invert

TABLE_DIGITS = 17
# Largest argument math.exp accepts without overflow
EXP_LIMIT = 709.0


def safe_exp(g: float) -> float:
    """``exp(g)`` saturating to ``inf`` instead of raising."""
    return math.inf if g > EXP_LIMIT else math.exp(g)


class FunctionClass(str, Enum):
    """Comparison-function classes a scalar map is tagged with."""

    K = "K"
    K_INFINITY = "K_INFINITY"
    C1_AT_ZERO = "C1_AT_ZERO"


@dataclass(frozen=True)
class MonotoneScalarFn:
    """A strictly increasing map ``[0, inf) -> [0, inf)`` with ``f(0) = 0``.

    Missing analytic derivatives fall back to central differences; a missing
    analytic inverse falls back to bracketed bisection with Newton polish.

    Functions whose values leave the double range (``exp(-1/a)``-type
    rescalings) may carry ``log_fn``, ``log_derivative`` and
    ``inverse_log_fn``: ``log f``, ``f' / f`` and ``log f^-1``. These stay
    finite where ``f`` itself underflows to 0 or overflows to ``inf``.
    """

    fn: ScalarMap
    derivative: ScalarMap | None = None
    inverse_fn: ScalarMap | None = None
    inverse_derivative: ScalarMap | None = None
    function_class: FunctionClass = FunctionClass.K_INFINITY
    name: str = "f"
    log_fn: ScalarMap | None = None
    log_derivative: ScalarMap | None = None
    inverse_log_fn: ScalarMap | None = None

    def __call__(self, s: float) -> float:
        """Evaluate the function."""
        return float(self.fn(s))

    def deriv(self, s: float) -> float:
        """Evaluate the derivative."""
        if self.derivative is not None:
            return float(self.derivative(s))
        return scalar_derivative(self.fn, s)

    def inverse(self, y: float, tol: float = 1e-12) -> float:
        """Evaluate the inverse function."""
        if self.inverse_fn is not None:
            return float(self.inverse_fn(y))
        return invert(self.fn, y, tol, derivative=self.deriv)

    def inverse_deriv(self, y: float) -> float:
        """Evaluate the derivative of the inverse function."""
        if self.inverse_derivative is not None:
            return float(self.inverse_derivative(y))
        slope = self.deriv(self.inverse(y))
        return math.inf if slope == 0.0 else 1.0 / slope

    def log_value(self, s: float) -> float:
        """Evaluate ``log f(s)``; ``-inf`` where ``f`` vanishes."""
        if self.log_fn is not None:
            return float(self.log_fn(s))
        value = self(s)
        return math.log(value) if value > 0.0 else -math.inf

    def log_deriv(self, s: float) -> float:
        """Evaluate the logarithmic derivative ``f'(s) / f(s)``."""
        if self.log_derivative is not None:
            return float(self.log_derivative(s))
        value = self(s)
        return math.inf if value <= 0.0 else self.deriv(s) / value

    def log_inverse(self, y: float) -> float:
        """Evaluate ``log f^-1(y)``; ``-inf`` where the inverse vanishes."""
        if self.inverse_log_fn is not None:
            return float(self.inverse_log_fn(y))
        value = self.inverse(y)
        return math.log(value) if value > 0.0 else -math.inf

    def inverted(self) -> "MonotoneScalarFn":
        """Return the inverse as a comparison function."""
        return MonotoneScalarFn(
            fn=self.inverse,
            derivative=self.inverse_deriv,
            inverse_fn=self.__call__,
            inverse_derivative=self.deriv,
            function_class=self.function_class,
            name=f"{self.name}^-1",
            log_fn=self.log_inverse,
            inverse_log_fn=self.log_value,
        )

    def compose(self, inner: "MonotoneScalarFn") -> "MonotoneScalarFn":
        """Return ``self o inner``."""

        def composed(s: float) -> float:
            return self(inner(s))

        def composed_derivative(s: float) -> float:
            return self.deriv(inner(s)) * inner.deriv(s)

        def composed_inverse(y: float) -> float:
            return inner.inverse(self.inverse(y))

        def composed_log(s: float) -> float:
            return self.log_value(inner(s))

        def composed_log_derivative(s: float) -> float:
            return self.log_deriv(inner(s)) * inner.deriv(s)

        def composed_log_inverse(y: float) -> float:
            return inner.log_inverse(self.inverse(y))

        both_unbounded = FunctionClass.K not in {self.function_class, inner.function_class}
        return MonotoneScalarFn(
            fn=composed,
            derivative=composed_derivative,
            inverse_fn=composed_inverse,
            function_class=FunctionClass.K_INFINITY if both_unbounded else FunctionClass.K,
            name=f"{self.name}o{inner.name}",
            log_fn=composed_log,
            log_derivative=composed_log_derivative,
            inverse_log_fn=composed_log_inverse,
        )

    def scaled(self, factor: float) -> "MonotoneScalarFn":
        """Return ``factor * self`` for ``factor > 0``."""
        if factor <= 0.0:
            msg = f"Scale factor must be positive, got {factor}"
            raise ValueError(msg)
        log_factor = math.log(factor)
        return MonotoneScalarFn(
            fn=lambda s: factor * self(s),
            derivative=lambda s: factor * self.deriv(s),
            inverse_fn=lambda y: self.inverse(y / factor),
            function_class=self.function_class,
            name=f"{factor:g}*{self.name}",
            log_fn=lambda s: log_factor + self.log_value(s),
            log_derivative=self.log_deriv,
            inverse_log_fn=lambda y: self.log_inverse(y / factor),
        )

    def sample(self, grid: Iterable[float]) -> np.ndarray:
        """Return rows ``(s, f(s), f'(s))`` on ``grid``."""
        return np.array([(s, self(s), self.deriv(s)) for s in grid], dtype=np.float64).reshape(-1, 3)

    def sample_log(self, grid: Iterable[float]) -> np.ndarray:
        """Return rows ``(log s, log f(s), s f'(s) / f(s))`` on a positive grid."""
        rows = [(math.log(s), self.log_value(s), s * self.log_deriv(s)) for s in grid]
        return np.array(rows, dtype=np.float64).reshape(-1, 3)

    def to_table(self, grid: Iterable[float]) -> str:
        """Render the sampled representation as whitespace-separated text."""
        lines = [f"# s {self.name} d{self.name}"]
        lines.extend(" ".join(f"{value:.{TABLE_DIGITS}g}" for value in row) for row in self.sample(grid))
        return "\n".join(lines) + "\n"

    def tabulated(self, lo: float, hi: float, per_decade: int = 16) -> "MonotoneScalarFn":
        """Return a fast cubic Hermite representation on ``[lo, hi]``.

        Interpolation runs in log-log coordinates, which is exact for power
        laws; outside ``[lo, hi]`` the end slopes continue as power laws. The
        table is built from :meth:`log_value`, so values far outside the
        double range are kept.
        """
        return tabulate_log(self.sample_log(log_grid(lo, hi, per_decade)), name=self.name)

    @classmethod
    def from_table(cls, text: str, name: str = "f") -> "MonotoneScalarFn":
        """Rebuild a tabulated function from :meth:`to_table` output."""
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        return tabulate(np.array(rows, dtype=np.float64).reshape(-1, 3), name=name)


def tabulate(table: np.ndarray, name: str = "f") -> MonotoneScalarFn:
    """Build a log-log cubic Hermite function from ``(s, f, f')`` rows."""
    rows = table[(table[:, 0] > 0.0) & (table[:, 1] > 0.0) & np.isfinite(table[:, 1])]
    if rows.shape[0] < 2:
        msg = f"Tabulation of {name} needs two positive rows, got {rows.shape[0]}"
        raise DegenerateSamplesError(msg)
    log_rows = np.column_stack([np.log(rows[:, 0]), np.log(rows[:, 1]), rows[:, 0] * rows[:, 2] / rows[:, 1]])
    return tabulate_log(log_rows, name=name)


def tabulate_log(table: np.ndarray, name: str = "f") -> MonotoneScalarFn:
    """Build a log-log cubic Hermite function from ``(log s, log f, s f'/f)`` rows.

    Rows with a non-finite logarithm or a non-positive elasticity are dropped.

    Raises:
        DegenerateSamplesError: With fewer than two usable rows, or when the
            logarithms are not strictly increasing.
    """
    usable = np.all(np.isfinite(table), axis=1) & (table[:, 2] > 0.0)
    rows = table[usable]
    if rows.shape[0] < 2:
        msg = f"Tabulation of {name} needs two positive rows, got {rows.shape[0]}"
        raise DegenerateSamplesError(msg)
    if np.any(np.diff(rows[:, 0]) <= 0.0) or np.any(np.diff(rows[:, 1]) <= 0.0):
        msg = f"Tabulation of {name} needs strictly increasing rows"
        raise DegenerateSamplesError(msg)

    log_s, log_f, slopes = rows[:, 0], rows[:, 1], rows[:, 2]
    forward = CubicHermiteSpline(log_s, log_f, slopes, extrapolate=False)
    backward = CubicHermiteSpline(log_f, log_s, 1.0 / slopes, extrapolate=False)
    slope = forward.derivative()
    lo_s, hi_s = float(log_s[0]), float(log_s[-1])
    lo_f, hi_f = float(log_f[0]), float(log_f[-1])
    lo_k, hi_k = float(slopes[0]), float(slopes[-1])

    def log_pair(u: float) -> tuple[float, float]:
        if u < lo_s:
            return lo_f + lo_k * (u - lo_s), lo_k
        if u > hi_s:
            return hi_f + hi_k * (u - hi_s), hi_k
        return float(forward(u)), float(slope(u))

    def log_value(s: float) -> float:
        if s <= 0.0:
            return -math.inf
        if math.isinf(s):
            return math.inf
        return log_pair(math.log(s))[0]

    def log_derivative(s: float) -> float:
        if s <= 0.0:
            return math.inf
        return log_pair(math.log(s))[1] / s

    def value(s: float) -> float:
        return 0.0 if s <= 0.0 else safe_exp(log_value(s))

    def derivative(s: float) -> float:
        if s <= 0.0:
            return 0.0 if lo_k > 1.0 else math.inf
        if math.isinf(s):
            return math.inf
        g, dg = log_pair(math.log(s))
        return safe_exp(g) * dg / s

    def log_inverse(y: float) -> float:
        if y <= 0.0:
            return -math.inf
        if math.isinf(y):
            return math.inf
        target = math.log(y)
        if target < lo_f:
            return lo_s + (target - lo_f) / lo_k
        if target > hi_f:
            return hi_s + (target - hi_f) / hi_k
        u = float(backward(target))
        # Newton on the forward spline keeps the inverse consistent with value()
        for _ in range(3):
            g, dg = log_pair(u)
            if dg <= 0.0:
                break
            u -= (g - target) / dg
        return u

    def inverse(y: float) -> float:
        return 0.0 if y <= 0.0 else safe_exp(log_inverse(y))

    return MonotoneScalarFn(
        fn=value,
        derivative=derivative,
        inverse_fn=inverse,
        function_class=FunctionClass.K_INFINITY,
        name=name,
        log_fn=log_value,
        log_derivative=log_derivative,
        inverse_log_fn=log_inverse,
    )


def identity(name: str = "id") -> MonotoneScalarFn:
    """Return the identity comparison function."""
    return MonotoneScalarFn(
        fn=lambda s: s,
        derivative=lambda _s: 1.0,
        inverse_fn=lambda y: y,
        inverse_derivative=lambda _y: 1.0,
        name=name,
    )


def power(coefficient: float, exponent: float, name: str | None = None) -> MonotoneScalarFn:
    """Return ``s -> coefficient * s**exponent``."""
    if coefficient <= 0.0 or exponent <= 0.0:
        msg = f"Power law needs positive parameters; coefficient={coefficient} exponent={exponent}"
        raise ValueError(msg)

    def derivative(s: float) -> float:
        if s <= 0.0:
            return 0.0 if exponent > 1.0 else (coefficient if exponent == 1.0 else math.inf)
        return coefficient * exponent * s ** (exponent - 1.0)

    def inverse(y: float) -> float:
        return (max(y, 0.0) / coefficient) ** (1.0 / exponent)

    def inverse_derivative(y: float) -> float:
        s = inverse(y)
        slope = derivative(s)
        return math.inf if slope == 0.0 else 1.0 / slope

    return MonotoneScalarFn(
        fn=lambda s: coefficient * max(s, 0.0) ** exponent,
        derivative=derivative,
        inverse_fn=inverse,
        inverse_derivative=inverse_derivative,
        function_class=FunctionClass.C1_AT_ZERO if exponent > 1.0 else FunctionClass.K_INFINITY,
        name=name or f"{coefficient:g}*s^{exponent:g}",
    )


def linear(slope: float, name: str | None = None) -> MonotoneScalarFn:
    """Return ``s -> slope * s``."""
    return power(slope, 1.0, name=name or f"{slope:g}*s")
