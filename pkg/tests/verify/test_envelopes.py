import math

import numpy as np
import pytest

from stabilityx.kfun import identity
from stabilityx.lyap import radial_quadratic
from stabilityx.systems import catalog
from stabilityx.verify import estimate_bounds
from stabilityx.verify import estimate_delta
from stabilityx.xform import build_change


def test_inverse_norm_envelope_of_signed_square() -> None:
    # T^-1(y) = sign(y) sqrt(|y|)
    change = build_change(catalog("halfspeed_1d").certificate, identity())
    delta = estimate_delta(change, r_min=1e-3, r_max=1e3, n_radii=25)
    assert delta(4.0) == pytest.approx(2.0, rel=1e-2)
    assert delta(4.0) <= 2.0
    assert delta(0.0) == 0.0


def test_inverse_norm_envelope_of_radial_identity_change() -> None:
    # |T(x)| = |x|^2 for V = |x|^2 and gamma = id
    change = build_change(radial_quadratic(2), identity())
    delta = estimate_delta(change, r_min=1e-2, r_max=1e2, n_radii=9, n_directions=8)
    for r in (0.05, 1.0, 30.0):
        assert delta(r) == pytest.approx(math.sqrt(r), rel=1e-2)
        assert delta(r) <= math.sqrt(r) * (1.0 + 1e-9)


def test_comparison_bounds_of_elliptic_form() -> None:
    bounds = estimate_bounds(catalog("ellipse_r2").certificate, n_radii=13, n_directions=16)
    assert bounds.alpha2(2.0) <= 4.0
    assert bounds.alpha2(2.0) == pytest.approx(4.0, rel=1e-2)
    assert bounds.alpha3(2.0) >= 16.0
    assert bounds.alpha3(2.0) == pytest.approx(16.0, rel=1e-2)


def test_bounds_sandwich_samples() -> None:
    cert = catalog("ellipse_r2").certificate
    bounds = estimate_bounds(cert, n_radii=13, n_directions=16)
    angle = 0.3
    for r in (0.01, 0.7, 150.0):
        x = r * np.array([math.cos(angle), math.sin(angle)])
        assert bounds.alpha2(r) <= cert(x) * (1.0 + 1e-9)
        assert cert(x) <= bounds.alpha3(r) * (1.0 + 1e-9)
