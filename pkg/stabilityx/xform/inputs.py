"""Input-space change ``v = R(d)`` that turns an ISES gain into an integral estimate.

For a system that is ISES with constants ``c = lambda = 1`` and gain
``alpha``, ``W(x) = |x|^2`` satisfies ``L_f W <= -W`` outside the gain ball
``|x| <= alpha(|d|)``. Inside it ``2 <f, x>`` is bounded by ``2 alpha~(|d|)``
with ``alpha~(r) = sup_{|x| <= alpha(r), |d| <= r} <f(x, d), x>``. Choosing

    kappa(r) = max{alpha~(r)^2, sqrt(2 alpha~(r) + alpha(r)^2)}

and ``R(d) = kappa(|d|) d / |d|`` yields ``L_{f_v} W <= -W + |v|^2`` for the
system ``f_v(x, v) = f(x, R^-1(v))``.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from stabilityx.kfun import DegenerateSamplesError
from stabilityx.kfun import EnvelopeSide
from stabilityx.kfun import FunctionClass
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import monotone_envelope
from stabilityx.sampling import annulus_points
from stabilityx.sampling import cube_to_ball
from stabilityx.sampling import sphere_points
from stabilityx.sampling import unit_cube
from stabilityx.systems import DisturbedSystem
from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Vector
from stabilityx.types import as_vector

logger = logging.getLogger(__name__)

Dynamics = Callable[[Vector, Vector], Vector]


class SupremumPlan(BaseModel):
    """Sampling plan of the supremum behind ``alpha~``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_states: int = Field(default=4096, ge=1, description="Low-discrepancy (x, d) samples per radius")
    n_radii: int = Field(default=64, ge=2, description="Radii on the logarithmic grid")
    r_min: float = Field(default=1e-3, gt=0.0, description="Smallest disturbance radius")
    r_max: float = Field(default=1e1, gt=0.0, description="Largest disturbance radius")
    safety: float = Field(default=1.1, ge=1.0, description="Factor applied before enveloping")
    shell_floor: float = Field(default=1e-4, gt=0.0, le=1.0, description="Smallest state fraction of the shell samples")


@dataclass(frozen=True)
class InputChange:
    """``R(d) = kappa(|d|) d / |d|`` with its inverse and the supremum envelope."""

    alpha: MonotoneScalarFn
    alpha_tilde: MonotoneScalarFn
    magnitude: MonotoneScalarFn

    def forward(self, d: Vector) -> Vector:
        """Evaluate ``v = R(d)``."""
        d = as_vector(d)
        norm = float(np.linalg.norm(d))
        if norm <= ORIGIN_FLOOR:
            return np.zeros_like(d)
        return self.magnitude(norm) * d / norm

    def inverse(self, v: Vector) -> Vector:
        """Evaluate ``d = R^-1(v)``."""
        v = as_vector(v)
        norm = float(np.linalg.norm(v))
        if norm <= ORIGIN_FLOOR:
            return np.zeros_like(v)
        return self.magnitude.inverse(norm) * v / norm


@dataclass(frozen=True)
class InputTransformedSystem:
    """``f_v(x, v) = f(x, R^-1(v))``."""

    base: DisturbedSystem
    inputs: InputChange

    def rhs(self, x: Vector, v: Vector) -> Vector:
        """Evaluate ``f_v(x, v)``."""
        return self.base(x, self.inputs.inverse(v))

    def as_system(self) -> DisturbedSystem:
        """The input-transformed dynamics as a plain system."""
        return DisturbedSystem(
            rhs=self.rhs,
            dim_x=self.base.dim_x,
            dim_d=self.base.dim_d,
            disturbance_radius=None,
            name=f"{self.base.name}[R]",
            lipschitz_at_origin=self.base.lipschitz_at_origin,
        )


def sampled_supremum(
    rhs: Dynamics,
    dim_x: int,
    dim_d: int,
    alpha: MonotoneScalarFn,
    plan: SupremumPlan,
) -> np.ndarray:
    """Rows ``(r, sup <f(x, d), x>)`` over ``|x| <= alpha(r)``, ``|d| <= r``.

    Ball samples are joined by shell samples with log-uniform state norms down
    to ``shell_floor`` times the gain radius and inputs on the sphere
    ``|d| = r``. The state ``x = 0`` is always a candidate, so the supremum is
    never negative. Sampling stops at the first radius where the gain or the
    supremum is no longer finite.

    Raises:
        DegenerateSamplesError: If fewer than two radii give finite rows.
    """
    cube = unit_cube(plan.n_states, dim_x + dim_d)
    unit_states = np.vstack([
        cube_to_ball(cube[:, :dim_x], 1.0),
        annulus_points(plan.n_states, dim_x, plan.shell_floor, 1.0),
    ])
    if dim_d:
        unit_inputs = np.vstack([cube_to_ball(cube[:, dim_x:], 1.0), sphere_points(plan.n_states, dim_d)])
    else:
        unit_inputs = np.zeros((2 * plan.n_states, 0))
    rows = []
    with np.errstate(over="ignore", invalid="ignore"):
        for r in np.geomspace(plan.r_min, plan.r_max, plan.n_radii):
            radius = alpha(r)
            best = 0.0 if math.isfinite(radius) else math.inf
            for x_unit, d_unit in zip(unit_states, unit_inputs, strict=True):
                if not math.isfinite(best):
                    break
                x = radius * x_unit
                try:
                    value = float(as_vector(rhs(x, r * d_unit)) @ x)
                except ArithmeticError:
                    value = math.inf
                best = max(best, value) if math.isfinite(value) else math.inf
            if not math.isfinite(best):
                # The envelope extends past the last finite row
                logger.warning("Input supremum TRUNCATED; r=%s radius=%s kept=%s", r, radius, len(rows))
                break
            rows.append((r, best))
    if len(rows) < 2:
        msg = f"Input supremum needs two finite radii, got {len(rows)}"
        raise DegenerateSamplesError(msg)
    return np.array(rows)


def input_change(
    system: DisturbedSystem | Dynamics,
    alpha: MonotoneScalarFn,
    plan: SupremumPlan | None = None,
    *,
    alpha_tilde: MonotoneScalarFn | None = None,
    dims: tuple[int, int] | None = None,
) -> InputChange:
    """Build ``R`` from the ISES gain ``alpha``.

    ``alpha_tilde`` may be given analytically; otherwise it is the upper
    envelope of ``safety`` times the sampled supremum. When every sampled
    supremum is zero the envelope degenerates to its ramp and a warning is
    logged.
    """
    plan = plan or SupremumPlan()
    if alpha_tilde is None:
        if isinstance(system, DisturbedSystem):
            rhs: Dynamics = system.__call__
            dim_x, dim_d = system.dim_x, system.dim_d
        elif dims is not None:
            rhs = system
            dim_x, dim_d = dims
        else:
            msg = "Plain dynamics need dims=(dim_x, dim_d)"
            raise ValueError(msg)
        rows = sampled_supremum(rhs, dim_x, dim_d, alpha, plan)
        if not np.any(rows[:, 1] > 0.0):
            logger.warning("Input supremum DEGENERATE; every sampled <f, x> <= 0, using the ramp")
        rows[:, 1] *= plan.safety
        alpha_tilde = monotone_envelope(rows, EnvelopeSide.UPPER, name="alpha~")
    envelope = alpha_tilde

    def kappa(r: float) -> float:
        if r <= 0.0:
            return 0.0
        a_tilde = max(envelope(r), 0.0)
        gain = alpha(r)
        return max(a_tilde * a_tilde, math.sqrt(2.0 * a_tilde + gain * gain))

    magnitude = MonotoneScalarFn(fn=kappa, function_class=FunctionClass.K_INFINITY, name="kappa")
    logger.debug("Input change BUILT; alpha=%s alpha_tilde=%s", alpha.name, envelope.name)
    return InputChange(alpha=alpha, alpha_tilde=envelope, magnitude=magnitude)
