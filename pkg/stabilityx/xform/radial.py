"""Closed-form radial coordinate changes ``T(x) = p(|x|) x / |x|``."""

import logging

import numpy as np

from stabilityx.kfun import MonotoneScalarFn
from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Matrix
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .change import ChangeProvenance
from .change import CoordinateChange

logger = logging.getLogger(__name__)


class RadialChange(CoordinateChange):
    """``T(x) = p(|x|) x / |x|`` for a K-infinity profile ``p``.

    ``DT(x) = p'(r) u u' + p(r) / r (I - u u')`` with ``r = |x|`` and
    ``u = x / r``; the inverse rescales by ``p^-1``.
    """

    def __init__(self, profile: MonotoneScalarFn, dim: int, name: str = "radial") -> None:
        """Wrap ``profile`` as a change of ``R^dim``."""
        self.profile = profile
        self.dim = dim
        self.c = 1.0
        self.gamma = profile
        self.provenance = ChangeProvenance(construction="radial", certificate=name, level=self.c, gamma=profile.name)
        logger.debug("Radial change BUILT; profile=%s dim=%s", profile.name, dim)

    def forward(self, x: Vector) -> Vector:
        """Evaluate ``T(x)``."""
        x = as_vector(x)
        norm = float(np.linalg.norm(x))
        if norm <= ORIGIN_FLOOR:
            return np.zeros(self.dim)
        return self.profile(norm) * x / norm

    def inverse(self, y: Vector) -> Vector:
        """Evaluate ``T^-1(y)``."""
        y = as_vector(y)
        norm = float(np.linalg.norm(y))
        if norm <= ORIGIN_FLOOR:
            return np.zeros(self.dim)
        return self.profile.inverse(norm) * y / norm

    def jacobian(self, x: Vector) -> Matrix:
        """Analytic ``DT(x)``."""
        x = as_vector(x)
        norm = float(np.linalg.norm(x))
        if norm <= ORIGIN_FLOOR:
            return np.zeros((self.dim, self.dim))
        u = x / norm
        radial = np.outer(u, u)
        return self.profile.deriv(norm) * radial + self.profile(norm) / norm * (np.eye(self.dim) - radial)

    def jvp(self, x: Vector, v: Vector) -> Vector:
        """``DT(x) v``."""
        return self.jacobian(x) @ as_vector(v)
