"""The normalized gradient flow and level-set projection."""

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import solve_ivp

from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .config import GradientFlowConfig
from .exceptions import LevelFloorHitError
from .exceptions import StiffFlowError

if TYPE_CHECKING:
    from .certificate import LyapunovCertificate

logger = logging.getLogger(__name__)

DEFAULT_FLOW = GradientFlowConfig()
POLISH_STEPS = 8
GRADIENT_FLOOR = 1e-300


class _BudgetExceededError(Exception):
    pass


def _normalized_step(cert: "LyapunovCertificate", x: Vector) -> Vector:
    g = cert.gradient(x)
    gg = float(g @ g)
    if not gg > GRADIENT_FLOOR:
        msg = f"Gradient vanishes away from the origin; x={x.tolist()}"
        raise StiffFlowError(msg)
    return g / gg


def grad_flow(
    cert: "LyapunovCertificate",
    x0: Vector,
    t: float,
    cfg: GradientFlowConfig = DEFAULT_FLOW,
) -> Vector:
    """Transport ``x0`` along ``grad V / |grad V|^2`` so that ``V`` changes by ``t``.

    The flow is integrated in the log-level coordinate ``tau = ln V``, where it
    reads ``dx/dtau = V(x) grad V / |grad V|^2``, with the RK45 pair; a few
    Newton steps along the gradient then put the end point on its level.

    Raises:
        LevelFloorHitError: If ``x0`` is the origin or ``V(x0) + t < v_min``.
        StiffFlowError: If the gradient vanishes or the step budget runs out.
    """
    x0 = as_vector(x0)
    if t == 0.0:
        return x0.copy()
    v0 = cert(x0)
    target = v0 + t
    if float(np.linalg.norm(x0)) <= ORIGIN_FLOOR or v0 <= 0.0:
        msg = f"Flow started at the origin; x0={x0.tolist()}"
        raise LevelFloorHitError(msg)
    if target < cfg.v_min:
        msg = f"Flow target below level floor; target={target} v_min={cfg.v_min}"
        raise LevelFloorHitError(msg)
    if cert.level_flow is not None:
        return as_vector(cert.level_flow(x0, t, cfg))

    evaluations = 0

    def rhs(_tau: float, x: np.ndarray) -> np.ndarray:
        nonlocal evaluations
        evaluations += 1
        if evaluations > cfg.max_steps:
            raise _BudgetExceededError
        return cert(x) * _normalized_step(cert, x)

    scale = max(1.0, float(np.linalg.norm(x0)))
    try:
        solution = solve_ivp(
            rhs,
            (math.log(v0), math.log(target)),
            x0,
            method="RK45",
            rtol=cfg.step_tol,
            atol=cfg.step_tol * 1e-2 * scale,
        )
    except _BudgetExceededError:
        msg = f"Flow step budget exhausted; x0={x0.tolist()} t={t} budget={cfg.max_steps}"
        raise StiffFlowError(msg) from None
    if not solution.success:
        msg = f"Flow integration failed; x0={x0.tolist()} t={t} reason={solution.message}"
        raise StiffFlowError(msg)

    x = np.asarray(solution.y[:, -1], dtype=np.float64)
    for _ in range(POLISH_STEPS):
        residual = cert(x) - target
        if abs(residual) <= 1e-3 * cfg.step_tol * (1.0 + abs(target)):
            break
        x = x - residual * _normalized_step(cert, x)

    logger.debug("Gradient flow DONE; v0=%s target=%s nfev=%s", v0, target, evaluations)
    return x


def project_to_level(
    cert: "LyapunovCertificate",
    x: Vector,
    c: float,
    cfg: GradientFlowConfig = DEFAULT_FLOW,
) -> Vector:
    """Return ``pi(x) = psi(c - V(x), x)``, the point of ``V^-1(c)`` on the flow line of ``x``."""
    return grad_flow(cert, x, c - cert(x), cfg)
