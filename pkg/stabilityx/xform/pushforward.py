"""Transformed dynamics ``f~(y, d) = DT(T^-1(y)) f(T^-1(y), d)``."""

import logging
from dataclasses import dataclass

import numpy as np

from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import SimulationConfig
from stabilityx.systems import Trajectory
from stabilityx.systems import simulate
from stabilityx.types import ORIGIN_FLOOR
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .change import CoordinateChange

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransformedSystem:
    """The pushforward of ``base`` under ``change``; ``f~(0, d) = 0``."""

    base: DisturbedSystem
    change: CoordinateChange

    @property
    def dim_x(self) -> int:
        """State dimension."""
        return self.base.dim_x

    @property
    def dim_d(self) -> int:
        """Disturbance dimension."""
        return self.base.dim_d

    def rhs(self, y: Vector, d: Vector | None = None) -> Vector:
        """Evaluate ``f~(y, d)``."""
        y = as_vector(y)
        if float(np.linalg.norm(y)) <= ORIGIN_FLOOR:
            return np.zeros(self.dim_x)
        x = self.change.inverse(y)
        if float(np.linalg.norm(x)) <= ORIGIN_FLOOR:
            return np.zeros(self.dim_x)
        return self.change.jvp(x, self.base(x, d))

    def __call__(self, y: Vector, d: Vector | None = None) -> Vector:
        """Evaluate ``f~(y, d)``."""
        return self.rhs(y, d)

    def as_system(self) -> DisturbedSystem:
        """The transformed dynamics as a plain system for direct simulation."""
        return DisturbedSystem(
            rhs=lambda y, d: self.rhs(y, d),
            dim_x=self.dim_x,
            dim_d=self.dim_d,
            disturbance_radius=self.base.disturbance_radius,
            name=f"{self.base.name}~",
            lipschitz_at_origin=False,
        )

    def trajectory(
        self,
        y0: Vector,
        signal: DisturbanceSignal | None = None,
        t_end: float = 10.0,
        tol: float = 1e-8,
        cfg: SimulationConfig | None = None,
    ) -> Trajectory:
        """``T(phi(t, T^-1(y0), d))``, the transformed solution by commutation."""
        x0 = self.change.inverse(as_vector(y0))
        base = simulate(self.base, x0, signal, t_end, tol, cfg or SimulationConfig())
        logger.debug("Transformed trajectory DONE; system=%s t_end=%s", self.base.name, t_end)
        return base.map_states(self.change.forward)


def pushforward(system: DisturbedSystem, change: CoordinateChange) -> TransformedSystem:
    """Push ``system`` forward through ``change``."""
    if system.dim_x != change.dim:
        msg = f"System {system.name} has dimension {system.dim_x}, change has {change.dim}"
        raise ValueError(msg)
    return TransformedSystem(base=system, change=change)
