"""The trajectory-based normal form ``y' = -y`` of an unperturbed system.

With ``t(x)`` the time the solution from ``x`` needs to reach ``V = c``
(negative when it has to run backward), ``W(x) = exp(t(x))`` decays exactly
like ``exp(-t)`` along solutions, and ``T(x) = W(x) S(pi(x))`` with
``pi(x) = phi(t(x), x)`` conjugates the system to ``y' = -y``.
"""

import logging
import math

import numpy as np
from scipy.integrate import solve_ivp

from stabilityx.differentiation import directional
from stabilityx.kfun import identity
from stabilityx.lyap import GradientFlowConfig
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import SphereMap
from stabilityx.lyap import ray_radius
from stabilityx.lyap import sphere_map
from stabilityx.sampling import sphere_points
from stabilityx.systems import DisturbedSystem
from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .change import ChangeProvenance
from .change import CoordinateChange
from .exceptions import BackwardBlowupError
from .exceptions import NormalFormError
from .exceptions import NotClassKInfinityError
from .pushforward import TransformedSystem

logger = logging.getLogger(__name__)

TRANSPORT_RTOL = 1e-12
TRANSPORT_ATOL = 1e-14
ESCAPE_NORM = 1e12
# W must exceed this along every axis ray before the radius reaches 2**GROWTH_DOUBLINGS
GROWTH_TARGET = 1e6
GROWTH_DOUBLINGS = 39
JVP_RELATIVE_STEP = 1e-5


class TrajectoryChange(CoordinateChange):
    """``T(x) = exp(t(x)) S(phi(t(x), x))`` for an unperturbed system."""

    def __init__(
        self,
        system: DisturbedSystem,
        cert: LyapunovCertificate,
        sphere: SphereMap,
        horizon: float,
    ) -> None:
        """Assemble the change; use :func:`flow_based_normal_form` to validate inputs."""
        self.system = system
        self.cert = cert
        self.sphere = sphere
        self.horizon = horizon
        self.c = sphere.c
        self.dim = system.dim_x
        self.gamma = identity(name="|y|")
        self.provenance = ChangeProvenance(
            construction="trajectory",
            certificate=cert.name,
            level=self.c,
            gamma=self.gamma.name,
        )
        self._zero = np.zeros(system.dim_d)

    def _vector_field(self, _t: float, x: np.ndarray) -> np.ndarray:
        return self.system(x, self._zero)

    def transport(self, x: Vector) -> tuple[float, Vector]:
        """Return ``(t(x), pi(x))``.

        Raises:
            BackwardBlowupError: If backward transport escapes or outlasts the
                horizon before reaching ``V = c``.
            NormalFormError: If forward transport never reaches ``V = c``.
        """
        x = as_vector(x)
        gap = self.cert(x) - self.c
        if gap == 0.0:
            return 0.0, x
        backward = gap < 0.0
        sign = -1.0 if backward else 1.0

        def reached(_t: float, y: np.ndarray) -> float:
            return self.cert(y) - self.c

        def escaped(_t: float, y: np.ndarray) -> float:
            return float(np.linalg.norm(y)) - ESCAPE_NORM

        reached.terminal = True  # type: ignore[attr-defined]
        escaped.terminal = True  # type: ignore[attr-defined]
        solution = solve_ivp(
            self._vector_field,
            (0.0, sign * self.horizon),
            x,
            method="DOP853",
            rtol=TRANSPORT_RTOL,
            atol=TRANSPORT_ATOL,
            events=[reached, escaped],
        )
        if solution.t_events[0].size:
            return float(solution.t_events[0][0]), np.asarray(solution.y_events[0][0], dtype=np.float64)
        if backward:
            msg = f"Backward transport from |x|={np.linalg.norm(x):.3g} did not reach V={self.c} within {self.horizon}"
            raise BackwardBlowupError(msg)
        msg = f"Forward transport from |x|={np.linalg.norm(x):.3g} did not reach V={self.c} within {self.horizon}"
        raise NormalFormError(msg)

    def level_function(self, x: Vector) -> float:
        """``W(x) = exp(t(x))``."""
        x = as_vector(x)
        if float(np.linalg.norm(x)) <= ORIGIN_FLOOR:
            return 0.0
        return math.exp(self.transport(x)[0])

    def forward(self, x: Vector) -> Vector:
        """Evaluate ``T(x)``."""
        x = as_vector(x)
        if float(np.linalg.norm(x)) <= ORIGIN_FLOOR:
            return np.zeros(self.dim)
        t, anchor = self.transport(x)
        return math.exp(t) * self.sphere.forward(anchor)

    def inverse(self, y: Vector) -> Vector:
        """``T^-1(y) = phi(-ln |y|, S^-1(y / |y|))``."""
        y = as_vector(y)
        radius = float(np.linalg.norm(y))
        if radius <= ORIGIN_FLOOR:
            return np.zeros(self.dim)
        anchor = self.sphere.inverse(y / radius)
        duration = -math.log(radius)
        if duration == 0.0:
            return anchor
        solution = solve_ivp(
            self._vector_field,
            (0.0, duration),
            anchor,
            method="DOP853",
            rtol=TRANSPORT_RTOL,
            atol=TRANSPORT_ATOL,
        )
        if not solution.success:
            msg = f"Transport for |y|={radius:.3g} failed: {solution.message}"
            raise BackwardBlowupError(msg)
        return np.asarray(solution.y[:, -1], dtype=np.float64)

    def jvp(self, x: Vector, v: Vector) -> Vector:
        """Directional difference with a step above the transport tolerance."""
        x = as_vector(x)
        step = JVP_RELATIVE_STEP * max(1.0, float(np.linalg.norm(x)))
        return directional(self.forward, x, as_vector(v), step=step)


def _check_growth(change: TrajectoryChange) -> None:
    for u in sphere_points(2 * change.dim, change.dim, include_axes=True)[: 2 * change.dim]:
        r0 = ray_radius(change.cert, u, change.c)
        values = []
        for k in range(GROWTH_DOUBLINGS + 1):
            w = change.level_function(r0 * 2.0**k * u)
            values.append(w)
            if w > GROWTH_TARGET:
                break
        else:
            msg = (
                f"W = exp(t(x)) stays bounded along direction {u.tolist()}; "
                f"W grew from {values[0]:.6g} to {values[-1]:.6g} over {GROWTH_DOUBLINGS} doublings"
            )
            raise NotClassKInfinityError(msg)


def _check_inner_edge(change: TrajectoryChange, inner_level: float) -> None:
    for u in sphere_points(2 * change.dim, change.dim, include_axes=True)[: 2 * change.dim]:
        change.transport(ray_radius(change.cert, u, inner_level) * u)


def flow_based_normal_form(
    system: DisturbedSystem,
    cert: LyapunovCertificate,
    c: float = 1.0,
    *,
    inner_level: float = 1e-6,
    horizon: float = 1e4,
    cfg: GradientFlowConfig | None = None,
) -> tuple[TrajectoryChange, TransformedSystem]:
    """Conjugate an unperturbed UGAS system to ``y' = -y`` by trajectory transport.

    Raises:
        NormalFormError: If the system has a disturbance, or forward transport
            fails.
        NotClassKInfinityError: If ``W = exp(t(x))`` saturates along a ray.
        BackwardBlowupError: If points at ``V = inner_level`` cannot be
            transported back to ``V = c`` within ``horizon``.
    """
    if not system.unperturbed:
        msg = f"Normal form needs D = {{0}}; {system.name} has dim_d={system.dim_d}"
        raise NormalFormError(msg)
    sphere = sphere_map(cert, c, cfg or GradientFlowConfig())
    change = TrajectoryChange(system=system, cert=cert, sphere=sphere, horizon=horizon)
    _check_growth(change)
    _check_inner_edge(change, inner_level)
    logger.debug("Normal form BUILT; system=%s c=%s", system.name, c)
    return change, TransformedSystem(base=system, change=change)
