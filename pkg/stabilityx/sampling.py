"""Deterministic quasi-random sampling of spheres, balls and level grids."""

import math

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from scipy.stats import norm
from scipy.stats import qmc

from .types import Matrix

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SamplingPlan(BaseModel):
    """Sampling plan for states and disturbance values."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_samples: int = Field(
        default=500,
        ge=1,
        description="Number of quasi-random samples",
    )
    radius_min: float = Field(
        default=1e-3,
        gt=0.0,
        description="Smallest sampled norm",
    )
    radius_max: float = Field(
        default=1e3,
        gt=0.0,
        description="Largest sampled norm",
    )
    disturbance_amplitude: float = Field(
        default=1.0,
        ge=0.0,
        description="Radius of the sampled disturbance ball",
    )
    seed: int = Field(
        default=0,
        ge=0,
        description="Scramble seed for the low-discrepancy sequence (0 = unscrambled)",
    )


def log_grid(lo: float, hi: float, per_decade: int = 8) -> np.ndarray:
    """Return a logarithmic grid on ``[lo, hi]`` with ``per_decade`` points per decade."""
    if not 0.0 < lo < hi:
        msg = f"Log grid needs 0 < lo < hi, got lo={lo} hi={hi}"
        raise ValueError(msg)
    count = max(2, math.ceil(per_decade * math.log10(hi / lo)) + 1)
    return np.geomspace(lo, hi, count)


def unit_cube(count: int, dim: int, seed: int = 0) -> Matrix:
    """Prefix-stable Halton points in ``[0, 1)^dim``.

    The first point of the sequence (the cube corner) is skipped.
    """
    if count <= 0:
        return np.empty((0, dim))
    engine = qmc.Halton(d=dim, scramble=seed != 0, seed=seed or None)
    engine.fast_forward(1)
    return np.asarray(engine.random(count), dtype=np.float64)


def sphere_points(count: int, dim: int, *, include_axes: bool = False, seed: int = 0) -> Matrix:
    """Quasi-random points on the unit sphere ``S^{dim-1}``.

    In one dimension the sphere is ``{-1, 1}``; in two dimensions angles follow
    the golden-ratio sequence; higher dimensions push Halton points through the
    normal quantile function and normalize. With ``include_axes`` the ``2 dim``
    signed coordinate directions come first.
    """
    if dim == 1:
        signs = np.array([[1.0], [-1.0]])
        return np.resize(signs, (max(count, 0), 1))

    axes = np.vstack([np.eye(dim), -np.eye(dim)]) if include_axes else np.empty((0, dim))
    remaining = max(count - axes.shape[0], 0)
    if dim == 2:
        angles = 2.0 * math.pi * ((np.arange(1, remaining + 1) * GOLDEN) % 1.0)
        points = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        cube = np.clip(unit_cube(remaining, dim, seed), 1e-12, 1.0 - 1e-12)
        points = norm.ppf(cube)
        points /= np.linalg.norm(points, axis=1, keepdims=True)
    return np.vstack([axes, points])


def cube_to_ball(cube: Matrix, radius: float) -> Matrix:
    """Map points of ``[0, 1)^dim`` onto the ball of ``radius``.

    Each point ``p`` of ``[-1, 1]^dim`` is rescaled by ``|p|_inf / |p|_2``.
    """
    cube = 2.0 * np.asarray(cube, dtype=np.float64) - 1.0
    sup = np.max(np.abs(cube), axis=1, keepdims=True)
    euclid = np.linalg.norm(cube, axis=1, keepdims=True)
    scale = np.divide(sup, euclid, out=np.zeros_like(sup), where=euclid > 0.0)
    return radius * cube * scale


def ball_points(count: int, dim: int, radius: float, seed: int = 0) -> Matrix:
    """Quasi-random points in the closed ball of ``radius``."""
    if dim == 0 or count <= 0:
        return np.zeros((max(count, 0), dim))
    return cube_to_ball(unit_cube(count, dim, seed), radius)


def annulus_points(count: int, dim: int, r_min: float, r_max: float, seed: int = 0) -> Matrix:
    """Quasi-random points with log-uniform norms in ``[r_min, r_max]``."""
    directions = sphere_points(count, dim, seed=seed)
    # Base-3 coordinate; base 2 would lock radii to the alternating 1-D signs
    fractions = unit_cube(count, 2, seed)[:, 1]
    radii = r_min * (r_max / r_min) ** fractions
    return directions * radii[:, None]
