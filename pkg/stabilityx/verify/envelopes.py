"""Sampled comparison functions of coordinate changes and certificates."""

import logging

import numpy as np

from stabilityx.kfun import EnvelopeSide
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import monotone_envelope
from stabilityx.lyap import ComparisonBounds
from stabilityx.lyap import LyapunovCertificate
from stabilityx.sampling import sphere_points
from stabilityx.xform import CoordinateChange

logger = logging.getLogger(__name__)


def estimate_delta(
    change: CoordinateChange,
    r_min: float = 1e-6,
    r_max: float = 1e6,
    n_radii: int = 64,
    n_directions: int = 16,
) -> MonotoneScalarFn:
    """Lower envelope ``delta`` with ``|T^-1(y)| >= delta(|y|)``.

    Each sphere ``|y| = r`` contributes the minimum of ``|T^-1|`` over its
    sampled directions.

    Raises:
        DegenerateSamplesError: If no sphere yields a positive minimum.
    """
    directions = sphere_points(n_directions, change.dim, include_axes=True)
    rows = []
    for r in np.geomspace(r_min, r_max, n_radii):
        smallest = min(float(np.linalg.norm(change.inverse(r * u))) for u in directions)
        rows.append((r, smallest))
    delta = monotone_envelope(rows, EnvelopeSide.LOWER, name="delta")
    logger.debug("Inverse norm envelope DONE; radii=%s directions=%s", n_radii, len(directions))
    return delta


def estimate_bounds(
    cert: LyapunovCertificate,
    r_min: float = 1e-3,
    r_max: float = 1e3,
    n_radii: int = 64,
    n_directions: int = 64,
) -> ComparisonBounds:
    """Sandwich ``alpha2(|x|) <= V(x) <= alpha3(|x|)`` from per-sphere extremes."""
    directions = sphere_points(n_directions, cert.dim, include_axes=True)
    lower = []
    upper = []
    for r in np.geomspace(r_min, r_max, n_radii):
        values = [cert(r * u) for u in directions]
        lower.append((r, min(values)))
        upper.append((r, max(values)))
    logger.debug("Comparison bounds DONE; certificate=%s radii=%s", cert.name, n_radii)
    return ComparisonBounds(
        alpha2=monotone_envelope(lower, EnvelopeSide.LOWER, name="alpha2"),
        alpha3=monotone_envelope(upper, EnvelopeSide.UPPER, name="alpha3"),
    )
