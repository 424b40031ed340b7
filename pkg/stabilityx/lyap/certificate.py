"""Lyapunov certificates."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from dataclasses import replace

import numpy as np

from stabilityx.differentiation import gradient as fd_gradient
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import identity
from stabilityx.kfun import power
from stabilityx.types import StateFunctional
from stabilityx.types import StateMap
from stabilityx.types import Vector
from stabilityx.types import as_vector

from .config import GradientFlowConfig
from .flow import grad_flow

# psi(t, x) in closed form: (x, t, cfg) -> state on level V(x) + t
LevelFlow = Callable[[Vector, float, GradientFlowConfig], Vector]


@dataclass(frozen=True)
class IssGain:
    """ISS-Lyapunov gain: ``|x| > chi(|d|)`` implies ``L_f V(x) <= -alpha1(|x|)``."""

    chi: MonotoneScalarFn
    alpha1: MonotoneScalarFn


@dataclass(frozen=True)
class ComparisonBounds:
    """Sandwich ``alpha2(|x|) <= V(x) <= alpha3(|x|)``."""

    alpha2: MonotoneScalarFn
    alpha3: MonotoneScalarFn


@dataclass(frozen=True)
class LyapunovCertificate:
    """A proper, positive definite function with its decay data.

    Args:
        value: ``V``.
        dim: State dimension.
        grad: Analytic gradient; central differences when omitted.
        iss_gain: Gain condition of an ISS-Lyapunov function.
        bounds: Comparison bounds in ``|x|``.
        decay: ``alpha1`` with ``L_f V(x) <= -alpha1(|x|)``.
        level_decay: ``alpha4`` with ``L_f V(x) <= -alpha4(V(x))`` (inside the
            gain region for ISS certificates).
        level_flow: Closed-form normalized gradient flow.
        name: Label used in logs and reports.
    """

    value: StateFunctional
    dim: int
    grad: StateMap | None = None
    iss_gain: IssGain | None = None
    bounds: ComparisonBounds | None = None
    decay: MonotoneScalarFn | None = None
    level_decay: MonotoneScalarFn | None = None
    level_flow: LevelFlow | None = None
    name: str = "V"

    def __call__(self, x: Vector) -> float:
        """Evaluate ``V``."""
        return float(self.value(as_vector(x)))

    def gradient(self, x: Vector) -> Vector:
        """Evaluate ``grad V``."""
        x = as_vector(x)
        if self.grad is not None:
            return as_vector(self.grad(x))
        return fd_gradient(self.value, x)

    def lie_derivative(self, x: Vector, velocity: Vector) -> float:
        """Evaluate ``<grad V(x), velocity>``."""
        return float(self.gradient(x) @ as_vector(velocity))

    def compose(self, rho: MonotoneScalarFn) -> "LyapunovCertificate":
        """Return the certificate of ``W = rho o V``.

        ``W`` decays at unit rate when ``rho`` was built from this certificate's
        level decay, and its normalized flow is the flow of ``V`` with the
        level offset pulled back through ``rho``.
        """

        def value(x: Vector) -> float:
            return rho(self(x))

        def grad(x: Vector) -> Vector:
            return rho.deriv(self(x)) * self.gradient(x)

        def level_flow(x: Vector, t: float, cfg: GradientFlowConfig) -> Vector:
            v = self(x)
            return grad_flow(self, x, rho.inverse(rho(v) + t) - v, cfg)

        bounds = None
        if self.bounds is not None:
            bounds = ComparisonBounds(rho.compose(self.bounds.alpha2), rho.compose(self.bounds.alpha3))
        return replace(
            self,
            value=value,
            grad=grad,
            bounds=bounds,
            decay=None,
            level_decay=identity(),
            level_flow=level_flow,
            name=f"{rho.name}o{self.name}",
        )


def _radial_flow(x: Vector, t: float, _cfg: GradientFlowConfig) -> Vector:
    v = float(x @ x)
    return x * math.sqrt((v + t) / v)


def radial_quadratic(dim: int, name: str = "|x|^2") -> LyapunovCertificate:
    """``V(x) = |x|^2`` with its closed-form normalized flow ``x sqrt((V + t) / V)``."""
    square = power(1.0, 2.0, name="s^2")
    return LyapunovCertificate(
        value=lambda x: float(x @ x),
        dim=dim,
        grad=lambda x: 2.0 * x,
        bounds=ComparisonBounds(alpha2=square, alpha3=square),
        level_flow=_radial_flow,
        name=name,
    )


def quadratic_form(matrix: np.ndarray, name: str = "x'Px") -> LyapunovCertificate:
    """``V(x) = x' P x`` for a symmetric positive definite ``P``."""
    p = np.asarray(matrix, dtype=np.float64)
    eigenvalues = np.linalg.eigvalsh(p)
    if eigenvalues[0] <= 0.0:
        msg = f"Quadratic form is not positive definite; eigenvalues={eigenvalues}"
        raise ValueError(msg)
    return LyapunovCertificate(
        value=lambda x: float(x @ p @ x),
        dim=p.shape[0],
        grad=lambda x: 2.0 * (p @ x),
        bounds=ComparisonBounds(
            alpha2=power(float(eigenvalues[0]), 2.0),
            alpha3=power(float(eigenvalues[-1]), 2.0),
        ),
        name=name,
    )
