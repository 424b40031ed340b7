"""Coordinate changes built from a certificate and a level profile."""

import logging
from abc import ABC
from abc import abstractmethod

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from stabilityx.differentiation import directional
from stabilityx.differentiation import fd_step
from stabilityx.differentiation import jacobian as fd_jacobian
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import check_gamma_property
from stabilityx.lyap import GradientFlowConfig
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import SphereMap
from stabilityx.lyap import grad_flow
from stabilityx.lyap import project_to_level
from stabilityx.lyap import sphere_map
from stabilityx.sampling import log_grid
from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Matrix
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .exceptions import GammaPropertyViolatedError

logger = logging.getLogger(__name__)

GAMMA_TOLERANCE = 1e-9
# Finite differences of Q give way to the radial formula below this |x| / step ratio
RADIAL_FALLBACK_RATIO = 100.0


class ChangeProvenance(BaseModel):
    """Record of the choices a coordinate change was built from."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    construction: str
    certificate: str
    level: float
    gamma: str
    rho: str | None = None


class CoordinateChange(ABC):
    """A homeomorphism ``T`` of ``R^n`` with ``T(0) = 0``, C1 away from the origin."""

    dim: int
    c: float
    gamma: MonotoneScalarFn
    provenance: ChangeProvenance

    @abstractmethod
    def forward(self, x: Vector) -> Vector:
        """Evaluate ``T(x)``."""

    @abstractmethod
    def inverse(self, y: Vector) -> Vector:
        """Evaluate ``T^-1(y)``."""

    def __call__(self, x: Vector) -> Vector:
        """Evaluate ``T(x)``."""
        return self.forward(x)

    def jacobian(self, x: Vector) -> Matrix:
        """Central-difference ``DT(x)``."""
        return fd_jacobian(self.forward, as_vector(x))

    def jvp(self, x: Vector, v: Vector) -> Vector:
        """Directional derivative ``DT(x) v``."""
        return directional(self.forward, as_vector(x), as_vector(v))


class LevelSetChange(CoordinateChange):
    """``T(x) = h(W(x)) Q(x)`` with ``h = gamma^-1`` and ``Q = S o pi``.

    The inverse is ``T^-1(y) = psi(gamma(|y|) - c, S^-1(y / |y|))``, so that
    ``W(T^-1(y)) = gamma(|y|)``. States with ``W`` below the level floor are
    identified with the origin.
    """

    def __init__(
        self,
        cert: LyapunovCertificate,
        gamma: MonotoneScalarFn,
        sphere: SphereMap,
        cfg: GradientFlowConfig,
        provenance: ChangeProvenance,
    ) -> None:
        """Assemble the change; use :func:`build_change` to validate inputs."""
        self.cert = cert
        self.gamma = gamma
        self.sphere = sphere
        self.cfg = cfg
        self.c = sphere.c
        self.dim = cert.dim
        self.provenance = provenance

    def _at_origin(self, x: Vector) -> bool:
        return float(np.linalg.norm(x)) <= ORIGIN_FLOOR or self.cert(x) < self.cfg.v_min

    def quotient(self, x: Vector) -> Vector:
        """``Q(x) = S(pi(x))``."""
        return self.sphere.forward(project_to_level(self.cert, x, self.c, self.cfg))

    def forward(self, x: Vector) -> Vector:
        """Evaluate ``T(x)``."""
        x = as_vector(x)
        if self._at_origin(x):
            return np.zeros(self.dim)
        return self.gamma.inverse(self.cert(x)) * self.quotient(x)

    def inverse(self, y: Vector) -> Vector:
        """Evaluate ``T^-1(y)``."""
        y = as_vector(y)
        radius = float(np.linalg.norm(y))
        if radius <= ORIGIN_FLOOR:
            return np.zeros(self.dim)
        level = self.gamma(radius)
        if level < self.cfg.v_min:
            return np.zeros(self.dim)
        anchor = self.sphere.inverse(y / radius)
        return grad_flow(self.cert, anchor, level - self.c, self.cfg)

    def _use_radial_fallback(self, x: Vector) -> bool:
        norm = float(np.linalg.norm(x))
        step = fd_step(x)
        if norm < RADIAL_FALLBACK_RATIO * step:
            return True
        # The stencil must stay above the level floor in every direction
        shrunk = x * (1.0 - step / norm)
        return self.cert(shrunk) < self.cfg.v_min

    def quotient_jacobian(self, x: Vector) -> Matrix:
        """``DQ(x)`` by central differences, radial ``(I - uu') / |x|`` near the floor."""
        x = as_vector(x)
        if self._use_radial_fallback(x):
            norm = float(np.linalg.norm(x))
            u = x / norm
            logger.debug("Quotient Jacobian FALLBACK; norm=%s", norm)
            return (np.eye(self.dim) - np.outer(u, u)) / norm
        return fd_jacobian(self.quotient, x)

    def jacobian(self, x: Vector) -> Matrix:
        """``DT(x) = h'(W) Q(x) grad W(x)' + h(W) DQ(x)``."""
        x = as_vector(x)
        if self._at_origin(x):
            return np.zeros((self.dim, self.dim))
        w = self.cert(x)
        return self.gamma.inverse_deriv(w) * np.outer(self.quotient(x), self.cert.gradient(x)) + self.gamma.inverse(
            w
        ) * self.quotient_jacobian(x)

    def jacobian_fd(self, x: Vector) -> Matrix:
        """Central-difference ``DT(x)``, the cross-check of :meth:`jacobian`."""
        return super().jacobian(x)

    def jvp(self, x: Vector, v: Vector) -> Vector:
        """``DT(x) v`` with one directional difference of ``Q``."""
        x = as_vector(x)
        v = as_vector(v)
        if self._at_origin(x):
            return np.zeros(self.dim)
        w = self.cert(x)
        q = self.quotient(x)
        if self._use_radial_fallback(x):
            dq = self.quotient_jacobian(x) @ v
        else:
            dq = directional(self.quotient, x, v)
        return self.gamma.inverse_deriv(w) * q * self.cert.lie_derivative(x, v) + self.gamma.inverse(w) * dq


def build_change(
    cert: LyapunovCertificate,
    gamma: MonotoneScalarFn,
    c: float = 1.0,
    cfg: GradientFlowConfig | None = None,
    rho_name: str | None = None,
) -> LevelSetChange:
    """Build ``T(x) = gamma^-1(W(x)) Q(x)`` for the certificate ``W``.

    Raises:
        NotStarShapedError: If ``W^-1(c)`` is not star-shaped.
        GammaPropertyViolatedError: If ``gamma(s) / gamma'(s) < s (1 - 1e-9)``
            somewhere on the working grid.
    """
    cfg = cfg or GradientFlowConfig()
    worst = check_gamma_property(gamma, log_grid(1e-6, 1e3, 16))
    if worst < 1.0 - GAMMA_TOLERANCE:
        msg = f"Level profile {gamma.name} violates gamma/gamma' >= s; worst ratio={worst}"
        raise GammaPropertyViolatedError(msg)
    sphere = sphere_map(cert, c, cfg)
    provenance = ChangeProvenance(
        construction="level_set",
        certificate=cert.name,
        level=c,
        gamma=gamma.name,
        rho=rho_name,
    )
    logger.debug("Coordinate change BUILT; certificate=%s gamma=%s c=%s", cert.name, gamma.name, c)
    return LevelSetChange(cert=cert, gamma=gamma, sphere=sphere, cfg=cfg, provenance=provenance)
