"""Disturbed systems, disturbance signals and trajectories."""

from collections.abc import Callable
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from stabilityx.types import Matrix
from stabilityx.types import Vector
from stabilityx.types import VectorField
from stabilityx.types import as_vector

from .exceptions import InvalidSignalError

CSV_DIGITS = 17


@dataclass(frozen=True)
class DisturbedSystem:
    """``x' = f(x, d)`` with ``x`` in ``R^dim_x`` and ``d`` in ``D``.

    Args:
        rhs: Right-hand side ``f(x, d)``.
        dim_x: State dimension.
        dim_d: Disturbance dimension; 0 means ``D = {0}``.
        disturbance_radius: Radius of the ball ``D``; ``None`` means ``D = R^dim_d``.
        name: Label used in logs and reports.
        lipschitz_at_origin: Whether uniqueness through the origin holds.
    """

    rhs: VectorField
    dim_x: int
    dim_d: int = 0
    disturbance_radius: float | None = 0.0
    name: str = "system"
    lipschitz_at_origin: bool = True

    def __call__(self, x: Vector, d: Vector | None = None) -> Vector:
        """Evaluate ``f(x, d)``; ``d`` defaults to zero."""
        disturbance = np.zeros(self.dim_d) if d is None else as_vector(d)
        return as_vector(self.rhs(as_vector(x), disturbance))

    @property
    def unperturbed(self) -> bool:
        """Whether the disturbance set is ``{0}``."""
        return self.dim_d == 0 or self.disturbance_radius == 0.0


@dataclass(frozen=True)
class DisturbanceSignal:
    """Piecewise-constant disturbance ``d(t) = values[k]`` on ``[t_k, t_{k+1})``.

    ``switch_times`` are strictly increasing and positive, with one more value
    than switch times.
    """

    switch_times: np.ndarray
    values: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        """Validate and normalize the arrays."""
        times = np.asarray(self.switch_times, dtype=np.float64).reshape(-1)
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1) if values.size == times.size + 1 else values.reshape(1, -1)
        if values.shape[0] != times.size + 1:
            msg = f"Signal needs {times.size + 1} values for {times.size} switches, got {values.shape[0]}"
            raise InvalidSignalError(msg)
        if times.size and (times[0] <= 0.0 or np.any(np.diff(times) <= 0.0)):
            msg = "Switch times must be positive and strictly increasing"
            raise InvalidSignalError(msg)
        if not np.all(np.isfinite(values)):
            msg = "Signal values must be finite"
            raise InvalidSignalError(msg)
        object.__setattr__(self, "switch_times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value: Vector | float) -> "DisturbanceSignal":
        """A signal holding ``value`` forever."""
        return cls(switch_times=np.empty(0), values=as_vector(value).reshape(1, -1))

    @classmethod
    def zero(cls, dim: int) -> "DisturbanceSignal":
        """The zero signal of dimension ``dim``."""
        return cls(switch_times=np.empty(0), values=np.zeros((1, dim)))

    @property
    def dim(self) -> int:
        """Disturbance dimension."""
        return int(self.values.shape[1])

    def value_at(self, t: float) -> Vector:
        """Value active at time ``t`` (right-continuous)."""
        return self.values[int(np.searchsorted(self.switch_times, t, side="right"))]

    def active_values(self, t: float) -> Matrix:
        """Values active on a set of positive measure inside ``[0, t]``."""
        return self.values[: int(np.searchsorted(self.switch_times, t, side="left")) + 1]

    def sup_norm(self, t: float) -> float:
        """Exact essential supremum of ``|d|`` over ``[0, t]``."""
        active = self.active_values(t)
        return float(np.max(np.linalg.norm(active, axis=1))) if active.size else 0.0

    def segments(self, t_end: float) -> list[tuple[float, float, Vector]]:
        """Constant pieces ``(start, end, value)`` covering ``[0, t_end]``."""
        edges = [0.0, *[float(t) for t in self.switch_times if t < t_end], t_end]
        return [(edges[k], edges[k + 1], self.values[k]) for k in range(len(edges) - 1)]

    def energy(self, t: float) -> float:
        """Exact ``int_0^t |d|^2``."""
        return float(sum((end - start) * float(value @ value) for start, end, value in self.segments(t)))

    def map_values(self, fn: Callable[[Vector], Vector]) -> "DisturbanceSignal":
        """Apply ``fn`` to every value, keeping the switch times."""
        mapped = np.array([as_vector(fn(v)) for v in self.values]).reshape(self.values.shape[0], -1)
        return DisturbanceSignal(switch_times=self.switch_times, values=mapped, seed=self.seed)


@dataclass(frozen=True)
class Trajectory:
    """A sampled solution ``phi(t, x0, d)`` on report times starting at 0."""

    times: np.ndarray
    states: np.ndarray
    signal: DisturbanceSignal | None = None
    tol_used: float = 1e-8
    label: str = field(default="trajectory", compare=False)

    @property
    def initial_state(self) -> Vector:
        """``x(0)``."""
        return self.states[0]

    @property
    def dim(self) -> int:
        """State dimension."""
        return int(self.states.shape[1])

    def norms(self) -> np.ndarray:
        """``|x(t)|`` at every report time."""
        return np.linalg.norm(self.states, axis=1)

    def map_states(self, fn: Callable[[Vector], Vector], signal: DisturbanceSignal | None = None) -> "Trajectory":
        """Image of the trajectory under a state map, optionally with a new signal."""
        mapped = np.array([as_vector(fn(x)) for x in self.states]).reshape(self.states.shape[0], -1)
        return Trajectory(
            times=self.times,
            states=mapped,
            signal=self.signal if signal is None else signal,
            tol_used=self.tol_used,
            label=self.label,
        )

    def to_csv(self) -> str:
        """Render as CSV with header ``t,x1..xn,norm``."""
        header = ["t", *[f"x{i + 1}" for i in range(self.dim)], "norm"]
        lines = [",".join(header)]
        for t, x, n in zip(self.times, self.states, self.norms(), strict=True):
            lines.append(",".join(f"{v:.{CSV_DIGITS}g}" for v in (t, *x, n)))
        return "\n".join(lines) + "\n"
