import math

import numpy as np
import pytest

from stabilityx.kfun import power
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import grad_flow
from stabilityx.lyap import quadratic_form
from stabilityx.lyap import radial_quadratic


def test_gradient_falls_back_to_finite_differences() -> None:
    cert = LyapunovCertificate(value=lambda x: float(x[0] ** 2 + 3.0 * x[1] ** 2), dim=2)
    np.testing.assert_allclose(cert.gradient(np.array([1.0, 1.0])), [2.0, 6.0], rtol=1e-6)


def test_lie_derivative() -> None:
    cert = radial_quadratic(2)
    assert cert.lie_derivative(np.array([1.0, 2.0]), np.array([-1.0, -2.0])) == pytest.approx(-10.0)


def test_quadratic_form_rejects_indefinite_matrix() -> None:
    with pytest.raises(ValueError, match="positive definite"):
        quadratic_form(np.diag([1.0, -1.0]))


def test_quadratic_form_bounds_from_eigenvalues() -> None:
    cert = quadratic_form(np.diag([1.0, 4.0]))
    assert cert.bounds is not None
    assert cert.bounds.alpha2(2.0) == pytest.approx(4.0)
    assert cert.bounds.alpha3(2.0) == pytest.approx(16.0)


def test_composed_certificate_value_and_gradient() -> None:
    w = radial_quadratic(2).compose(power(1.0, 2.0, name="sq"))
    x = np.array([2.0, 0.0])
    assert w(x) == pytest.approx(16.0)
    np.testing.assert_allclose(w.gradient(x), [32.0, 0.0])
    assert w.name == "sqo|x|^2"
    assert w.level_decay is not None
    assert w.level_decay(3.0) == pytest.approx(3.0)


def test_composed_certificate_flow_moves_rescaled_level() -> None:
    w = radial_quadratic(2).compose(power(1.0, 2.0))
    x = grad_flow(w, np.array([1.0, 0.0]), 3.0)
    np.testing.assert_allclose(x, [math.sqrt(2.0), 0.0], atol=1e-9)
    assert w(x) == pytest.approx(4.0)


def test_composed_certificate_bounds() -> None:
    w = radial_quadratic(1).compose(power(1.0, 2.0))
    assert w.bounds is not None
    assert w.bounds.alpha2(2.0) == pytest.approx(16.0)
