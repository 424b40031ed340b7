"""Radial identification of a star-shaped level set with the unit sphere."""

import logging
from dataclasses import dataclass

import numpy as np

from stabilityx.kfun import invert
from stabilityx.sampling import sphere_points
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .certificate import LyapunovCertificate
from .config import GradientFlowConfig
from .exceptions import NotStarShapedError
from .flow import DEFAULT_FLOW

logger = logging.getLogger(__name__)

STAR_CHECK_POINTS = 32


def ray_radius(cert: LyapunovCertificate, u: Vector, level: float) -> float:
    """Solve ``V(r u) = level`` for ``r > 0`` along the unit direction ``u``."""
    u = as_vector(u)
    return invert(
        lambda r: cert(r * u),
        level,
        1e-14,
        derivative=lambda r: cert.lie_derivative(r * u, u),
    )


@dataclass(frozen=True)
class SphereMap:
    """``S(x) = x / |x|`` on ``V^-1(c)`` and its inverse ``S^-1(u) = r(u) u``."""

    cert: LyapunovCertificate
    c: float

    def forward(self, x: Vector) -> Vector:
        """Map a point of the level set to the unit sphere."""
        x = as_vector(x)
        return x / np.linalg.norm(x)

    def inverse(self, u: Vector) -> Vector:
        """Map a unit vector to the level set."""
        u = as_vector(u)
        u = u / np.linalg.norm(u)
        return ray_radius(self.cert, u, self.c) * u


def sphere_map(
    cert: LyapunovCertificate,
    c: float,
    cfg: GradientFlowConfig = DEFAULT_FLOW,
    n_check: int = STAR_CHECK_POINTS,
) -> SphereMap:
    """Build the radial sphere map of ``V^-1(c)`` after a star-shape check.

    Raises:
        NotStarShapedError: If ``<grad V(x), x> <= 0`` at a sampled point of the
            level set.
    """
    if c < cfg.v_min:
        msg = f"Reference level {c} below level floor {cfg.v_min}"
        raise ValueError(msg)
    candidate = SphereMap(cert=cert, c=c)
    for u in sphere_points(n_check, cert.dim, include_axes=True):
        x = candidate.inverse(u)
        radial = cert.lie_derivative(x, x)
        if not radial > 0.0:
            msg = f"Level set V={c} is not star-shaped; <grad V(x), x>={radial}"
            raise NotStarShapedError(msg, witness=x)
    logger.debug("Sphere map BUILT; certificate=%s c=%s checked=%s", cert.name, c, n_check)
    return candidate
