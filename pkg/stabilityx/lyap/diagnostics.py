"""Sampled verification of certificate hypotheses."""

import logging

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from stabilityx.sampling import SamplingPlan
from stabilityx.sampling import annulus_points
from stabilityx.sampling import sphere_points
from stabilityx.types import Vector

from .certificate import LyapunovCertificate

logger = logging.getLogger(__name__)

BOUND_TOLERANCE = 1e-9
RAY_DOUBLINGS = 24


class PropertyCheck(BaseModel):
    """Outcome of one sampled property."""

    model_config = ConfigDict(extra="forbid")

    name: str
    passed: bool
    worst_value: float = Field(description="Smallest sampled margin; positive means the property holds")
    witness: list[float] | None = Field(default=None, description="State attaining the worst margin")
    samples: int = 0


class CertificateDiagnostics(BaseModel):
    """Per-property report of a certificate check."""

    model_config = ConfigDict(extra="forbid")

    certificate: str
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        """Whether every property passed."""
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> PropertyCheck:
        """Look up a property by name."""
        for check in self.checks:
            if check.name == name:
                return check
        msg = f"No property named {name!r}"
        raise KeyError(msg)


def _worst(name: str, margins: list[float], points: list[Vector]) -> PropertyCheck:
    index = int(np.argmin(margins))
    worst = float(margins[index])
    return PropertyCheck(
        name=name,
        passed=worst > 0.0,
        worst_value=worst,
        witness=[float(v) for v in points[index]],
        samples=len(margins),
    )


def _properness(cert: LyapunovCertificate, plan: SamplingPlan) -> PropertyCheck:
    # V must strictly grow along every sampled ray as the radius doubles
    directions = sphere_points(min(plan.n_samples, 64), cert.dim, include_axes=True)
    radii = plan.radius_min * 2.0 ** np.arange(RAY_DOUBLINGS)
    radii = radii[radii <= max(plan.radius_max, 2.0 * plan.radius_min)]
    margins: list[float] = []
    points: list[Vector] = []
    for u in directions:
        values = np.array([cert(r * u) for r in radii])
        growth = np.diff(values) / np.maximum(np.abs(values[1:]), 1e-300)
        k = int(np.argmin(growth))
        margins.append(float(growth[k]))
        points.append(radii[k + 1] * u)
    return _worst("proper", margins, points)


def check_certificate(cert: LyapunovCertificate, plan: SamplingPlan | None = None) -> CertificateDiagnostics:
    """Check definiteness, properness, gradient and star-shape hypotheses by sampling.

    Failures are reported with the worst sample as witness; nothing is raised.
    """
    plan = plan or SamplingPlan()
    states = list(annulus_points(plan.n_samples, cert.dim, plan.radius_min, plan.radius_max, plan.seed))

    values = [cert(x) for x in states]
    definite = _worst("positive_definite", values, states)
    if abs(cert(np.zeros(cert.dim))) > 0.0:
        definite = definite.model_copy(update={"passed": False})

    gradients = [cert.gradient(x) for x in states]
    checks = [
        definite,
        _properness(cert, plan),
        _worst("gradient_nonvanishing", [float(np.linalg.norm(g)) for g in gradients], states),
        _worst("star_shaped", [float(g @ x) for g, x in zip(gradients, states, strict=True)], states),
    ]

    if cert.bounds is not None:
        margins = []
        for x, v in zip(states, values, strict=True):
            r = float(np.linalg.norm(x))
            scale = max(abs(v), 1e-300)
            lower = (v - cert.bounds.alpha2(r)) / scale
            upper = (cert.bounds.alpha3(r) - v) / scale
            margins.append(min(lower, upper) + BOUND_TOLERANCE)
        checks.append(_worst("bounds", margins, states))

    report = CertificateDiagnostics(certificate=cert.name, checks=checks)
    logger.debug("Certificate CHECKED; certificate=%s passed=%s", cert.name, report.passed)
    return report
