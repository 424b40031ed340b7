"""Level-wise Jacobian bound of the quotient map ``Q = S o pi``."""

import logging

import numpy as np

from stabilityx.differentiation import jacobian
from stabilityx.sampling import sphere_points
from stabilityx.types import Matrix
from stabilityx.types import StateMap
from stabilityx.types import Vector

from .certificate import LyapunovCertificate
from .config import GradientFlowConfig
from .exceptions import LevelFloorHitError
from .flow import DEFAULT_FLOW
from .flow import project_to_level
from .sphere import ray_radius

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 1.5


def level_set_points(cert: LyapunovCertificate, s: float, count: int) -> Matrix:
    """Quasi-random points of ``V^-1(s)`` (prefix-stable in ``count``)."""
    directions = sphere_points(count, cert.dim)
    return np.array([ray_radius(cert, u, s) * u for u in directions]).reshape(-1, cert.dim)


def level_quotient_map(
    cert: LyapunovCertificate,
    c: float,
    cfg: GradientFlowConfig = DEFAULT_FLOW,
) -> StateMap:
    """Return ``Q(x) = pi(x) / |pi(x)|`` for the reference level ``c``."""

    def quotient(x: Vector) -> Vector:
        p = project_to_level(cert, x, c, cfg)
        return p / np.linalg.norm(p)

    return quotient


def estimate_L(
    cert: LyapunovCertificate,
    c_ref: float,
    s: float,
    n_samples: int = 16,
    cfg: GradientFlowConfig = DEFAULT_FLOW,
) -> float:
    """Sampled ``1.5 * sup_{V(x) = s} |DQ(x)|`` with central-difference Jacobians.

    Raises:
        LevelFloorHitError: If ``s`` is below the level floor.
    """
    if s < cfg.v_min:
        msg = f"Level {s} below level floor {cfg.v_min}"
        raise LevelFloorHitError(msg)
    quotient = level_quotient_map(cert, c_ref, cfg)
    worst = 0.0
    for x in level_set_points(cert, s, n_samples):
        worst = max(worst, float(np.linalg.norm(jacobian(quotient, x), 2)))
    logger.debug("Jacobian bound DONE; s=%s samples=%s L=%s", s, n_samples, SAFETY_FACTOR * worst)
    return SAFETY_FACTOR * worst
