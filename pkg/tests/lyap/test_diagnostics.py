from dataclasses import replace

import numpy as np

from stabilityx.kfun import power
from stabilityx.lyap import ComparisonBounds
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import check_certificate
from stabilityx.lyap import radial_quadratic
from stabilityx.sampling import SamplingPlan


def test_radial_certificate_passes_every_check() -> None:
    report = check_certificate(radial_quadratic(2), SamplingPlan(n_samples=200))
    assert report.passed
    assert {check.name for check in report.checks} == {
        "positive_definite",
        "proper",
        "gradient_nonvanishing",
        "star_shaped",
        "bounds",
    }


def test_degenerate_certificate_fails_properness_along_second_axis() -> None:
    cert = LyapunovCertificate(value=lambda x: float(x[0] ** 2), dim=2, name="x1^2")
    proper = check_certificate(cert, SamplingPlan(n_samples=64)).get("proper")
    assert not proper.passed
    assert proper.witness is not None
    assert proper.witness[0] == 0.0


def test_flat_certificate_is_definite_with_nonvanishing_gradient() -> None:
    cert = LyapunovCertificate(value=lambda x: float(np.exp(-1.0 / (2.0 * (x @ x)))), dim=1, name="V1")
    report = check_certificate(cert, SamplingPlan(n_samples=100, radius_min=0.1, radius_max=10.0))
    assert report.get("positive_definite").passed
    assert report.get("gradient_nonvanishing").passed


def test_bounds_check_catches_wrong_sandwich() -> None:
    cert = replace(radial_quadratic(2), bounds=ComparisonBounds(alpha2=power(2.0, 2.0), alpha3=power(3.0, 2.0)))
    assert not check_certificate(cert, SamplingPlan(n_samples=50)).get("bounds").passed
