"""Central finite differences shared by certificates and coordinate changes."""

import numpy as np

from .types import Matrix
from .types import ScalarMap
from .types import StateFunctional
from .types import StateMap
from .types import Vector
from .types import as_vector

RELATIVE_STEP = 1e-6


def fd_step(x: Vector | float, relative: float = RELATIVE_STEP) -> float:
    """Return the central-difference step ``h = relative * max(1, |x|)``."""
    norm = float(np.linalg.norm(np.atleast_1d(x)))
    return relative * max(1.0, norm)


def scalar_derivative(fn: ScalarMap, s: float, *, one_sided: bool = False) -> float:
    """Differentiate a scalar map at ``s``.

    A forward difference is used when ``one_sided`` is set or when the stencil
    would leave the half line.
    """
    h = fd_step(s)
    if one_sided or s - h < 0.0:
        return (fn(s + h) - fn(s)) / h
    return (fn(s + h) - fn(s - h)) / (2.0 * h)


def gradient(fn: StateFunctional, x: Vector, step: float | None = None) -> Vector:
    """Central-difference gradient of a scalar functional."""
    x = as_vector(x)
    h = fd_step(x) if step is None else step
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        grad[i] = (fn(x + e) - fn(x - e)) / (2.0 * h)
    return grad


def jacobian(fn: StateMap, x: Vector, step: float | None = None) -> Matrix:
    """Central-difference Jacobian; column ``j`` is the derivative along ``e_j``."""
    x = as_vector(x)
    h = fd_step(x) if step is None else step
    columns = []
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        columns.append((as_vector(fn(x + e)) - as_vector(fn(x - e))) / (2.0 * h))
    return np.column_stack(columns)


def directional(fn: StateMap, x: Vector, v: Vector, step: float | None = None) -> Vector:
    """Central-difference directional derivative ``D fn(x) v``."""
    x = as_vector(x)
    v = as_vector(v)
    v_norm = float(np.linalg.norm(v))
    if v_norm == 0.0:
        return np.zeros_like(as_vector(fn(x)))
    h = (fd_step(x) if step is None else step) / v_norm
    return (as_vector(fn(x + h * v)) - as_vector(fn(x - h * v))) / (2.0 * h)
