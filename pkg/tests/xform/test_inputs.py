import logging
import math

import numpy as np
import pytest

from stabilityx.kfun import FunctionClass
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import identity
from stabilityx.kfun import linear
from stabilityx.kfun import power
from stabilityx.sampling import annulus_points
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import catalog
from stabilityx.xform import InputTransformedSystem
from stabilityx.xform import SupremumPlan
from stabilityx.xform import input_change
from stabilityx.xform import input_table
from stabilityx.xform import sampled_supremum


def test_analytic_envelope_formula() -> None:
    inputs = input_change(catalog("iss_scalar").system, linear(1.0), alpha_tilde=identity())
    assert inputs.forward(np.array([2.0]))[0] == pytest.approx(4.0)
    assert inputs.forward(np.array([-2.0]))[0] == pytest.approx(-4.0)
    assert inputs.inverse(np.array([4.0]))[0] == pytest.approx(2.0, rel=1e-9)


def test_zero_input_maps_to_zero() -> None:
    inputs = input_change(catalog("iss_scalar").system, linear(1.0), alpha_tilde=identity())
    np.testing.assert_array_equal(inputs.forward(np.zeros(1)), np.zeros(1))
    np.testing.assert_array_equal(inputs.inverse(np.zeros(1)), np.zeros(1))


def test_sampled_supremum_against_calculus() -> None:
    # max over |x| <= 2r of x (d - x) with |d| <= r is r^2 / 4
    plan = SupremumPlan(n_states=1024, n_radii=4, r_min=0.5, r_max=4.0)
    rows = sampled_supremum(catalog("iss_scalar").system, 1, 1, linear(2.0), plan)
    assert rows.shape == (4, 2)
    for r, value in rows:
        assert value <= r * r / 4.0 * (1.0 + 1e-12)
        assert value >= 0.5 * r * r / 4.0


def test_sampled_envelope_dominates_scaled_samples() -> None:
    plan = SupremumPlan(n_states=1024, n_radii=5, r_min=0.25, r_max=4.0)
    system = catalog("iss_scalar").system
    inputs = input_change(system, linear(2.0), plan)
    rows = sampled_supremum(system, 1, 1, linear(2.0), plan)
    for r, value in rows:
        assert inputs.alpha_tilde(r) >= plan.safety * value
    assert inputs.alpha_tilde(1.0) >= 0.125
    assert inputs.alpha_tilde.name == "alpha~"


def test_plain_dynamics_need_dimensions() -> None:
    with pytest.raises(ValueError, match="dims"):
        input_change(lambda x, d: -x + d, linear(2.0))


def test_plain_dynamics_with_dimensions() -> None:
    plan = SupremumPlan(n_states=64, n_radii=3)
    inputs = input_change(lambda x, d: -x + d, linear(2.0), plan, dims=(1, 1))
    assert inputs.magnitude(1.0) > 0.0


def test_degenerate_supremum_warns(caplog: pytest.LogCaptureFixture) -> None:
    system = DisturbedSystem(rhs=lambda x, _d: -x, dim_x=1, dim_d=1, disturbance_radius=None, name="deaf")
    with caplog.at_level(logging.WARNING, logger="stabilityx"):
        inputs = input_change(system, linear(1.0), SupremumPlan(n_states=64, n_radii=3))
    assert "DEGENERATE" in caplog.text
    # kappa(r) >= alpha(r) when alpha~ is only the ramp
    assert inputs.magnitude(2.0) >= 2.0


def test_input_transformed_system_inverts_the_input() -> None:
    entry = catalog("iss_scalar")
    inputs = input_change(entry.system, linear(1.0), alpha_tilde=identity())
    transformed = InputTransformedSystem(base=entry.system, inputs=inputs)
    # R^-1(4) = 2, so f(1, 2) = 1
    assert transformed.rhs(np.array([1.0]), np.array([4.0]))[0] == pytest.approx(1.0, rel=1e-9)
    plain = transformed.as_system()
    assert plain.name == "iss_scalar[R]"
    assert plain.disturbance_radius is None


def test_input_table_rows() -> None:
    inputs = input_change(catalog("iss_scalar").system, linear(1.0), alpha_tilde=identity())
    assert input_table(inputs, np.array([[2.0]])) == "d1,v1\n2,4\n"


def test_shell_samples_reach_interior_maximum() -> None:
    # <f, x> = x (d - x) peaks at x = r / 2 on |d| = r, a quarter of the gain radius 2r
    plan = SupremumPlan(n_states=64, n_radii=2, r_min=1.0, r_max=2.0)
    rows = sampled_supremum(catalog("iss_scalar").system, 1, 1, linear(2.0), plan)
    for r, value in rows:
        assert value == pytest.approx(r * r / 4.0, rel=1e-2)


def test_input_round_trip_with_analytic_envelope() -> None:
    inputs = input_change(catalog("iss_r2").system, linear(2.0), alpha_tilde=power(0.25, 2.0))
    for d in annulus_points(200, 2, 1e-3, 1e2):
        np.testing.assert_allclose(inputs.inverse(inputs.forward(d)), d, rtol=1e-8, atol=1e-12)


def test_input_round_trip_with_sampled_envelope() -> None:
    plan = SupremumPlan(n_states=64, n_radii=6, r_min=0.1, r_max=10.0)
    inputs = input_change(catalog("iss_scalar").system, linear(2.0), plan)
    for d in annulus_points(200, 1, 0.1, 10.0):
        np.testing.assert_allclose(inputs.inverse(inputs.forward(d)), d, rtol=1e-8, atol=1e-12)


def test_supremum_stops_at_unbounded_gain(caplog: pytest.LogCaptureFixture) -> None:
    alpha = MonotoneScalarFn(fn=lambda r: r if r < 2.0 else math.inf, function_class=FunctionClass.K, name="capped")
    plan = SupremumPlan(n_states=64, n_radii=6, r_min=0.1, r_max=10.0)
    with caplog.at_level(logging.WARNING, logger="stabilityx"):
        rows = sampled_supremum(catalog("iss_scalar").system, 1, 1, alpha, plan)
    assert "TRUNCATED" in caplog.text
    assert rows.shape == (4, 2)
    assert np.all(np.isfinite(rows))
