"""Piecewise power-law profiles through strictly increasing positive nodes.

Between consecutive knots the profile is ``v_i (s / s_i)^p_i``, a straight line
in log-log coordinates, so values, derivatives, inverses, the running
integral ``int_0^r`` and its inverse all have closed forms.
"""

import math
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from .exceptions import EnvelopeFailureError


@dataclass(frozen=True)
class PowerLawProfile:
    """Strictly increasing piecewise power law on ``[0, inf)``.

    Args:
        knots: Strictly increasing positive abscissae.
        values: Strictly increasing positive ordinates at the knots.
        low_exponent: Exponent of the extension below the first knot.
        high_exponent: Exponent of the extension above the last knot.
    """

    knots: np.ndarray
    values: np.ndarray
    low_exponent: float
    high_exponent: float
    exponents: np.ndarray = field(init=False, repr=False)
    cumulative: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Validate the nodes and tabulate the segment exponents and integrals."""
        knots = np.asarray(self.knots, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if knots.size == 0 or knots.shape != values.shape:
            msg = f"Profile needs matching non-empty nodes; knots={knots.size} values={values.size}"
            raise EnvelopeFailureError(msg)
        if np.any(knots <= 0.0) or np.any(values <= 0.0):
            msg = "Profile nodes must be strictly positive"
            raise EnvelopeFailureError(msg)
        if np.any(np.diff(knots) <= 0.0) or np.any(np.diff(values) <= 0.0):
            msg = "Profile nodes must be strictly increasing"
            raise EnvelopeFailureError(msg)
        if self.low_exponent <= 0.0 or self.high_exponent <= 0.0:
            msg = f"Extension exponents must be positive; low={self.low_exponent} high={self.high_exponent}"
            raise EnvelopeFailureError(msg)

        exponents = np.log(values[1:] / values[:-1]) / np.log(knots[1:] / knots[:-1])
        piece_exponents = np.concatenate([[self.low_exponent], exponents, [self.high_exponent]])

        # cumulative[k] = int_0^{knots[k]}
        cumulative = np.empty_like(knots)
        cumulative[0] = values[0] * knots[0] / (self.low_exponent + 1.0)
        for k in range(1, knots.size):
            p = exponents[k - 1]
            ratio = knots[k] / knots[k - 1]
            cumulative[k] = cumulative[k - 1] + values[k - 1] * knots[k - 1] / (p + 1.0) * (ratio ** (p + 1.0) - 1.0)

        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "exponents", piece_exponents)
        object.__setattr__(self, "cumulative", cumulative)

    def _piece(self, index: int) -> tuple[float, float, float, float]:
        """Return ``(base_s, base_v, exponent, base_integral)`` of a piece."""
        base = max(index - 1, 0)
        return (
            float(self.knots[base]),
            float(self.values[base]),
            float(self.exponents[index]),
            float(self.cumulative[base]),
        )

    def value(self, s: float) -> float:
        """Evaluate the profile."""
        if s <= 0.0:
            return 0.0
        base_s, base_v, p, _ = self._piece(int(np.searchsorted(self.knots, s, side="right")))
        try:
            return base_v * (s / base_s) ** p
        except OverflowError:
            return math.inf

    def derivative(self, s: float) -> float:
        """Evaluate the derivative; at ``0`` it is the limit from the right."""
        if s <= 0.0:
            if self.low_exponent > 1.0:
                return 0.0
            if self.low_exponent == 1.0:
                return float(self.values[0] / self.knots[0])
            return math.inf
        index = int(np.searchsorted(self.knots, s, side="right"))
        _, _, p, _ = self._piece(index)
        return p * self.value(s) / s

    def inverse(self, y: float) -> float:
        """Evaluate the inverse profile."""
        if y <= 0.0:
            return 0.0
        base_s, base_v, p, _ = self._piece(int(np.searchsorted(self.values, y, side="right")))
        try:
            return base_s * (y / base_v) ** (1.0 / p)
        except OverflowError:
            return math.inf

    def integral(self, r: float) -> float:
        """Evaluate ``int_0^r`` of the profile in closed form."""
        if r <= 0.0:
            return 0.0
        index = int(np.searchsorted(self.knots, r, side="right"))
        base_s, base_v, p, base_int = self._piece(index)
        if index == 0:
            return base_int * (r / base_s) ** (p + 1.0)
        return base_int + base_v * base_s / (p + 1.0) * ((r / base_s) ** (p + 1.0) - 1.0)

    def integral_inverse(self, y: float) -> float:
        """Solve ``integral(r) = y`` in closed form."""
        if y <= 0.0:
            return 0.0
        index = int(np.searchsorted(self.cumulative, y, side="right"))
        base_s, base_v, p, base_int = self._piece(index)
        if index == 0:
            return base_s * (y / base_int) ** (1.0 / (p + 1.0))
        return base_s * (1.0 + (y - base_int) * (p + 1.0) / (base_v * base_s)) ** (1.0 / (p + 1.0))

    def log_value(self, s: float) -> float:
        """Evaluate ``log`` of the profile without leaving the double range."""
        if s <= 0.0:
            return -math.inf
        base_s, base_v, p, _ = self._piece(int(np.searchsorted(self.knots, s, side="right")))
        return math.log(base_v) + p * math.log(s / base_s)

    def log_inverse(self, y: float) -> float:
        """Evaluate ``log`` of the inverse profile."""
        if y <= 0.0:
            return -math.inf
        base_s, base_v, p, _ = self._piece(int(np.searchsorted(self.values, y, side="right")))
        return math.log(base_s) + math.log(y / base_v) / p
