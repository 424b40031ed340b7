"""Built-in systems with analytic certificates and closed-form references."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from stabilityx.kfun import FunctionClass
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import identity
from stabilityx.kfun import linear
from stabilityx.kfun import power
from stabilityx.lyap import IssGain
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import quadratic_form
from stabilityx.lyap import radial_quadratic
from stabilityx.types import Vector

from .exceptions import UnknownSystemError
from .models import DisturbedSystem

Reference = Callable[..., object]

# Below this |x| the factor exp(-1/(2x^2)) is exactly 0 in double precision
FLAT_FLOOR = 1e-150


@dataclass(frozen=True)
class CatalogEntry:
    """A system, its certificate and closed-form reference maps.

    ``reference["solution"](t, x0, d)`` is the exact flow for constant ``d``
    where one is known; other keys are entry specific.
    """

    system: DisturbedSystem
    certificate: LyapunovCertificate
    reference: dict[str, Reference] = field(default_factory=dict)
    description: str = ""


def _halfspeed_1d() -> CatalogEntry:
    system = DisturbedSystem(rhs=lambda x, _d: -0.5 * x, dim_x=1, name="halfspeed_1d")
    certificate = replace(
        radial_quadratic(1, name="x^2"),
        decay=power(1.0, 2.0),
        level_decay=identity(),
    )
    return CatalogEntry(
        system=system,
        certificate=certificate,
        reference={
            "T": lambda x: np.sign(x) * x * x,
            "solution": lambda t, x0, _d=None: np.asarray(x0) * math.exp(-0.5 * t),
        },
        description="x' = -x/2 with V = x^2; T(x) = sign(x) x^2 gives y' = -y",
    )


def _cubic_profile() -> MonotoneScalarFn:
    """``p(s) = s exp(-1/(2 s^2))``, the radial part of ``T(x) = |x| V1(x) x / |x|``."""

    def exponent(s: float) -> float:
        return 0.5 / (s * s) if s > FLAT_FLOOR else math.inf

    def value(s: float) -> float:
        return 0.0 if s <= 0.0 else s * math.exp(-exponent(s))

    def derivative(s: float) -> float:
        return 0.0 if s <= FLAT_FLOOR else math.exp(-exponent(s)) * (1.0 + 2.0 * exponent(s))

    def log_value(s: float) -> float:
        return -math.inf if s <= 0.0 else math.log(s) - exponent(s)

    def inverse(y: float) -> float:
        if y <= 0.0:
            return 0.0
        target = math.log(y)
        # log p(lo) <= target <= log p(hi)
        lo = 1.0 / math.sqrt(2.0 * (abs(target) + 1.0))
        hi = max(1.0, 2.0 * y)
        return float(brentq(lambda s: log_value(s) - target, lo, hi, xtol=lo * 1e-15))

    return MonotoneScalarFn(
        fn=value,
        derivative=derivative,
        inverse_fn=inverse,
        function_class=FunctionClass.C1_AT_ZERO,
        name="x*V1",
        log_fn=log_value,
    )


def _cubic_1d() -> CatalogEntry:
    system = DisturbedSystem(rhs=lambda x, _d: -(x**3), dim_x=1, name="cubic_1d")
    certificate = replace(radial_quadratic(1, name="x^2"), decay=power(2.0, 4.0))

    def v1(x: Vector) -> Vector:
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(x == 0.0, 0.0, np.exp(-1.0 / (2.0 * x * x)))

    return CatalogEntry(
        system=system,
        certificate=certificate,
        reference={
            "V1": v1,
            "T": lambda x: np.asarray(x, dtype=np.float64) * v1(x),
            "T_profile": _cubic_profile(),
            "solution": lambda t, x0, _d=None: np.asarray(x0) / np.sqrt(1.0 + 2.0 * np.asarray(x0) ** 2 * t),
        },
        description=(
            "x' = -x^3; exp(-1/(2x^2)) decays at unit rate but is bounded, "
            "T(x) = x exp(-1/(2x^2)) gives y' = -(1 + x^2) y"
        ),
    )


def _linear(name: str, matrix: np.ndarray, certificate: LyapunovCertificate, description: str) -> CatalogEntry:
    system = DisturbedSystem(rhs=lambda x, _d: matrix @ x, dim_x=matrix.shape[0], name=name)
    return CatalogEntry(
        system=system,
        certificate=replace(certificate, decay=power(1.0, 2.0), level_decay=identity()),
        reference={"solution": lambda t, x0, _d=None: expm(matrix * t) @ np.asarray(x0, dtype=np.float64)},
        description=description,
    )


def _linear_r2() -> CatalogEntry:
    return _linear("linear_r2", -np.eye(2), radial_quadratic(2), "x' = -x in R^2 with V = |x|^2")


def _rotation_r2() -> CatalogEntry:
    matrix = np.array([[-1.0, 2.0], [-2.0, -1.0]])
    return _linear("rotation_r2", matrix, radial_quadratic(2), "x' = Ax, A = [[-1, 2], [-2, -1]], V = |x|^2")


def _ellipse_r2() -> CatalogEntry:
    certificate = quadratic_form(np.diag([1.0, 4.0]), name="x1^2+4x2^2")
    return _linear("ellipse_r2", -np.eye(2), certificate, "x' = -x in R^2 with elliptic V = x1^2 + 4 x2^2")


def _iss(name: str, dim: int) -> CatalogEntry:
    system = DisturbedSystem(rhs=lambda x, d: -x + d, dim_x=dim, dim_d=dim, disturbance_radius=None, name=name)
    certificate = replace(
        radial_quadratic(dim),
        iss_gain=IssGain(chi=linear(2.0), alpha1=power(0.5, 2.0)),
    )

    def solution(t: float, x0: Vector, d: Vector | None = None) -> Vector:
        x0 = np.asarray(x0, dtype=np.float64)
        d = np.zeros_like(x0) if d is None else np.asarray(d, dtype=np.float64)
        return x0 * math.exp(-t) + d * (1.0 - math.exp(-t))

    return CatalogEntry(
        system=system,
        certificate=certificate,
        reference={"solution": solution},
        description=f"x' = -x + d in R^{dim}, V = |x|^2, chi(r) = 2r",
    )


_REGISTRY: dict[str, Callable[[], CatalogEntry]] = {
    "halfspeed_1d": _halfspeed_1d,
    "cubic_1d": _cubic_1d,
    "linear_r2": _linear_r2,
    "rotation_r2": _rotation_r2,
    "ellipse_r2": _ellipse_r2,
    "iss_scalar": lambda: _iss("iss_scalar", 1),
    "iss_r2": lambda: _iss("iss_r2", 2),
}


def catalog_names() -> list[str]:
    """Registered catalog names in registration order."""
    return list(_REGISTRY)


def catalog(name: str) -> CatalogEntry:
    """Look up a built-in system.

    Raises:
        UnknownSystemError: If ``name`` is not registered.
    """
    try:
        builder = _REGISTRY[name]
    except KeyError:
        msg = f"Unknown system {name!r}; known: {', '.join(_REGISTRY)}"
        raise UnknownSystemError(msg) from None
    return builder()
