"""Explicit constructions of the decay rate, the rescaling and the level profile.

* ``make_alpha4`` builds a C1 decay rate below ``min{a, alpha1(alpha3^-1(a))}``.
* ``make_rho`` builds the rescaling ``rho`` that turns a decay rate into unit
  exponential decay of ``rho o V``.
* ``make_gamma`` builds the level profile ``gamma`` from the Jacobian bound
  ``L(s)`` of the level-set quotient map.
"""

import logging
import math

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from stabilityx.sampling import log_grid
from stabilityx.types import ScalarMap

from .checks import check_gamma_property
from .config import QuadratureConfig
from .envelope import running_min_from_right
from .exceptions import EnvelopeFailureError
from .models import FunctionClass
from .models import MonotoneScalarFn
from .models import safe_exp
from .quadrature import DEFAULT_QUADRATURE
from .quadrature import integrate

logger = logging.getLogger(__name__)

SOFTMIN_MARGIN = 1e-3
SOFTMIN_SHARPNESS = 8.0
TAU_MIN = 1e-12
L_FLOOR = 1e-12

# Cumulative-integral nodes at quarter decades; 10**0 is a node exactly
_NODES = 10.0 ** (np.arange(-48, 25) / 4.0)


def softmin(u: float, v: float, sharpness: float = SOFTMIN_SHARPNESS) -> float:
    """Smooth minimum ``(u^-p + v^-p)^(-1/p)``, never above ``min(u, v)``."""
    if u <= 0.0 or v <= 0.0:
        return 0.0
    m = min(u, v)
    return m * ((u / m) ** -sharpness + (v / m) ** -sharpness) ** (-1.0 / sharpness)


def _dominates_identity(fn: ScalarMap, grid: np.ndarray) -> bool:
    return all(fn(a) >= a for a in grid)


class _CumulativeIntegral:
    """``int_anchor^a g`` evaluated from a node table plus one short quadrature."""

    def __init__(self, integrand: ScalarMap, anchor: float, cfg: QuadratureConfig) -> None:
        self.integrand = integrand
        self.cfg = cfg
        self.nodes = _NODES
        table = np.zeros_like(self.nodes)
        start = int(np.searchsorted(self.nodes, anchor))
        if anchor == 0.0:
            table[0] = integrate(integrand, 0.0, float(self.nodes[0]), cfg)
            start = 0
        for k in range(start + 1, self.nodes.size):
            table[k] = table[k - 1] + integrate(integrand, float(self.nodes[k - 1]), float(self.nodes[k]), cfg)
        for k in range(start - 1, -1, -1):
            table[k] = table[k + 1] - integrate(integrand, float(self.nodes[k]), float(self.nodes[k + 1]), cfg)
        self.anchor = anchor
        self.table = table

    def __call__(self, a: float) -> float:
        k = int(np.searchsorted(self.nodes, a, side="right")) - 1
        if k < 0:
            if self.anchor == 0.0:
                return integrate(self.integrand, 0.0, a, self.cfg)
            return float(self.table[0]) - integrate(self.integrand, a, float(self.nodes[0]), self.cfg)
        return float(self.table[k]) + integrate(self.integrand, float(self.nodes[k]), a, self.cfg)


def make_alpha4(
    alpha1: MonotoneScalarFn,
    alpha3: MonotoneScalarFn,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> MonotoneScalarFn:
    """Build ``alpha4(a) = (2/pi) int_0^a delta(t) / (1 + t^2) dt``.

    ``delta`` is the identity when ``alpha1 o alpha3^-1`` never drops below it
    on the working grid, and ``(1 - 1e-3) softmin{a, alpha1(alpha3^-1(a))}``
    otherwise. The result is C1 with ``alpha4'(0) = 0`` and
    ``alpha4(a) <= delta(a)``.
    """

    def bound(a: float) -> float:
        return alpha1(alpha3.inverse(a))

    if _dominates_identity(bound, log_grid(1e-6, 1e3, 4)):

        def delta(a: float) -> float:
            return a

    else:

        def delta(a: float) -> float:
            return (1.0 - SOFTMIN_MARGIN) * softmin(a, bound(a))

    def integrand(t: float) -> float:
        return delta(t) / (1.0 + t * t)

    cumulative = _CumulativeIntegral(integrand, 0.0, cfg)

    def alpha4(a: float) -> float:
        if a <= 0.0:
            return 0.0
        return 2.0 / math.pi * cumulative(a)

    def alpha4_derivative(a: float) -> float:
        if a <= 0.0:
            return 0.0
        return 2.0 / math.pi * integrand(a)

    logger.debug("Decay rate BUILT; alpha1=%s alpha3=%s", alpha1.name, alpha3.name)
    return MonotoneScalarFn(
        fn=alpha4,
        derivative=alpha4_derivative,
        function_class=FunctionClass.C1_AT_ZERO,
        name="alpha4",
    )


def make_rho(alpha4: MonotoneScalarFn, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> MonotoneScalarFn:
    """Build ``rho(a) = exp(-int_a^1 1/alpha4)`` with ``rho(0) = 0``.

    ``log rho`` is stored alongside the value and stays finite where ``rho``
    underflows to 0 or overflows to ``inf``; :meth:`MonotoneScalarFn.tabulated`
    works from it. Levels at or below ``1e-12`` map to 0.
    """

    def reciprocal(t: float) -> float:
        return 1.0 / alpha4(t)

    # exponent(a) = int_1^a 1/alpha4 = -int_a^1 1/alpha4
    exponent = _CumulativeIntegral(reciprocal, 1.0, cfg)

    def log_rho(a: float) -> float:
        if a <= TAU_MIN:
            return -math.inf
        if a == 1.0:
            return 0.0
        return exponent(a)

    def log_rho_derivative(a: float) -> float:
        if a <= TAU_MIN:
            return math.inf
        return reciprocal(a)

    def rho(a: float) -> float:
        return 0.0 if a <= TAU_MIN else safe_exp(log_rho(a))

    def rho_derivative(a: float) -> float:
        if a <= TAU_MIN:
            return 0.0
        return safe_exp(log_rho(a) - math.log(alpha4(a)))

    logger.debug("Rescaling BUILT; alpha4=%s", alpha4.name)
    return MonotoneScalarFn(
        fn=rho,
        derivative=rho_derivative,
        function_class=FunctionClass.K_INFINITY,
        name="rho",
        log_fn=log_rho,
        log_derivative=log_rho_derivative,
    )


def _end_slope(secant_exponent: float, node: float, knot: float, secant: float, floor: float) -> float:
    """End derivative of the monotone cubic, matched to a power-law extension.

    The extension exponent is at least ``floor``; the derivative stays within
    three secants so the end cell of the cubic remains monotone.
    """
    slope = max(secant_exponent, floor) * node / knot
    return min(slope, 3.0 * secant)


def make_gamma(
    L: ScalarMap,
    s_max: float = 1e3,
    s_min: float = 1e-6,
    per_decade: int = 4,
) -> MonotoneScalarFn:
    """Build the level profile ``gamma = h^-1`` with ``h(r) = int_0^r a``.

    ``b(s) = min{s, s / max(L(s), 1e-12)}`` is sampled on a log grid over
    ``[s_min, s_max]`` and its tilted running minimum from the right is
    interpolated by a monotone cubic Hermite spline, so ``a`` is C1 and
    strictly increasing. Outside the grid ``a`` continues as power laws
    joined with matching slopes. The upper one grows at most linearly, so
    ``a(s) <= s`` above the grid; the lower one grows at least linearly unless
    its slope is clipped to keep the first cubic cell monotone. Since ``a``
    increases, ``h(r) <= r a(r)``, which is ``gamma(s) / gamma'(s) >= s``.
    ``h`` and ``a`` are attached as the inverse and its derivative.

    Raises:
        EnvelopeFailureError: If the level bound is not strictly positive.
    """
    grid = log_grid(s_min, s_max, per_decade)
    bounds = np.array([min(s, s / max(L(s), L_FLOOR)) for s in grid])
    if not np.all(np.isfinite(bounds)) or np.any(bounds <= 0.0):
        worst = float(grid[int(np.argmin(np.nan_to_num(bounds, nan=-1.0)))])
        msg = f"Level bound not strictly positive; s={worst}"
        raise EnvelopeFailureError(msg)

    nodes = running_min_from_right(grid, bounds)
    exponents = np.log(nodes[1:] / nodes[:-1]) / np.log(grid[1:] / grid[:-1])
    secants = np.diff(nodes) / np.diff(grid)
    slopes = PchipInterpolator(grid, nodes).derivative()(grid)
    slopes[0] = _end_slope(float(exponents[0]), float(nodes[0]), float(grid[0]), float(secants[0]), 1.0)
    slopes[-1] = min(float(exponents[-1]) * nodes[-1] / grid[-1], nodes[-1] / grid[-1], 3.0 * float(secants[-1]))

    spline = CubicHermiteSpline(grid, nodes, slopes)
    antiderivative = spline.antiderivative()
    s0, sn = float(grid[0]), float(grid[-1])
    a0, an = float(nodes[0]), float(nodes[-1])
    p_low = float(slopes[0]) * s0 / a0
    p_high = float(slopes[-1]) * sn / an
    h0 = a0 * s0 / (p_low + 1.0)
    offset = float(antiderivative(s0))
    h_nodes = h0 + antiderivative(grid) - offset
    hn = float(h_nodes[-1])

    def a(r: float) -> float:
        if r <= 0.0:
            return 0.0
        if r < s0:
            return a0 * (r / s0) ** p_low
        if r > sn:
            return an * (r / sn) ** p_high
        return float(spline(r))

    def h(r: float) -> float:
        if r <= 0.0:
            return 0.0
        if r < s0:
            return h0 * (r / s0) ** (p_low + 1.0)
        if r > sn:
            return hn + an * sn / (p_high + 1.0) * ((r / sn) ** (p_high + 1.0) - 1.0)
        return h0 + float(antiderivative(r)) - offset

    def h_inverse(y: float) -> float:
        if y <= 0.0:
            return 0.0
        if y < h0:
            return s0 * (y / h0) ** (1.0 / (p_low + 1.0))
        if y > hn:
            return sn * (1.0 + (y - hn) * (p_high + 1.0) / (an * sn)) ** (1.0 / (p_high + 1.0))
        k = min(max(int(np.searchsorted(h_nodes, y, side="right")) - 1, 0), grid.size - 2)
        lo, hi = float(grid[k]), float(grid[k + 1])
        # Vectorised and scalar evaluation of h may differ in the last bit
        if h(lo) >= y:
            return lo
        if h(hi) <= y:
            return hi
        return float(brentq(lambda r: h(r) - y, lo, hi, xtol=lo * 1e-15))

    def gamma_derivative(s: float) -> float:
        slope = a(h_inverse(s))
        return math.inf if slope == 0.0 else 1.0 / slope

    gamma = MonotoneScalarFn(
        fn=h_inverse,
        derivative=gamma_derivative,
        inverse_fn=h,
        inverse_derivative=a,
        function_class=FunctionClass.K_INFINITY,
        name="gamma",
    )
    logger.debug(
        "Level profile BUILT; s_min=%s s_max=%s low=%s high=%s worst_ratio=%s",
        s_min,
        s_max,
        p_low,
        p_high,
        check_gamma_property(gamma, grid),
    )
    return gamma
