"""Adaptive quadrature with an explicit convergence contract."""

import logging
import math

from scipy import integrate as scipy_integrate

from stabilityx.types import ScalarMap

from .config import QuadratureConfig
from .exceptions import NonConvergentError

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureConfig()


def integrate(
    f: ScalarMap,
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Integrate ``f`` over ``[a, b]``.

    Integrable endpoint singularities are fine: QUADPACK never evaluates the
    endpoints themselves.

    Raises:
        ValueError: If ``a > b``.
        NonConvergentError: If the tolerance is not met within ``cfg.max_depth``
            subintervals.
    """
    if a > b:
        msg = f"Integration bounds reversed; a={a} b={b}"
        raise ValueError(msg)
    if a == b:
        return 0.0

    result = scipy_integrate.quad(
        f,
        a,
        b,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_depth,
        full_output=1,
    )
    value, error = float(result[0]), float(result[1])
    # A fourth element (the QUADPACK message) is only returned when ier != 0
    if len(result) > 3 or not math.isfinite(value):
        msg = f"Quadrature did not converge on [{a}, {b}]; value={value} error={error}"
        raise NonConvergentError(msg)

    logger.debug("Quadrature DONE; a=%s b=%s value=%s error=%s", a, b, value, error)
    return value
