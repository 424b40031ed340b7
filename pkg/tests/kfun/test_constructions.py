import math
from collections.abc import Callable

import numpy as np
import pytest

from stabilityx.kfun import EnvelopeFailureError
from stabilityx.kfun import check_gamma_property
from stabilityx.kfun import default_grid
from stabilityx.kfun import identity
from stabilityx.kfun import is_strictly_increasing
from stabilityx.kfun import make_alpha4
from stabilityx.kfun import make_gamma
from stabilityx.kfun import make_rho
from stabilityx.kfun import power
from stabilityx.kfun.constructions import softmin


def test_alpha4_identity_closed_form() -> None:
    alpha4 = make_alpha4(identity(), identity())
    assert alpha4(1.0) == pytest.approx(math.log(2.0) / math.pi, abs=1e-6)
    assert alpha4(0.5) == pytest.approx(math.log(1.25) / math.pi, abs=1e-6)
    assert alpha4(0.0) == 0.0


def test_alpha4_stays_below_both_bounds() -> None:
    alpha1 = power(1.0, 2.0)
    alpha3 = identity()
    alpha4 = make_alpha4(alpha1, alpha3)
    for a in np.geomspace(1e-3, 1e2, 25):
        assert alpha4(a) <= min(a, alpha1(alpha3.inverse(a)))


def test_alpha4_is_flat_at_zero() -> None:
    alpha4 = make_alpha4(identity(), identity())
    quotients = [alpha4(h) / h for h in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert quotients == sorted(quotients, reverse=True)
    assert quotients[-1] < 1e-4
    assert alpha4.deriv(0.0) == 0.0


def test_alpha4_strictly_increasing() -> None:
    alpha4 = make_alpha4(identity(), identity())
    assert is_strictly_increasing(alpha4, np.geomspace(1e-4, 1e3, 50))


def test_softmin_never_exceeds_min() -> None:
    assert softmin(1.0, 2.0) <= 1.0
    assert softmin(1.0, 1.0) == pytest.approx(2.0 ** (-1.0 / 8.0))
    assert softmin(0.0, 3.0) == 0.0


def test_rho_of_identity_is_identity() -> None:
    rho = make_rho(identity())
    assert rho(0.5) == pytest.approx(0.5, rel=1e-9)
    assert rho(4.0) == pytest.approx(4.0, rel=1e-9)


def test_rho_endpoints() -> None:
    rho = make_rho(power(1.0, 2.0))
    assert rho(1.0) == 1.0
    assert rho(0.0) == 0.0


def test_rho_of_square_closed_form() -> None:
    rho = make_rho(power(1.0, 2.0))
    assert rho(0.5) == pytest.approx(math.exp(-1.0), abs=1e-7)


def test_rho_difference_quotient_vanishes_at_zero() -> None:
    rho = make_rho(power(1.0, 2.0))
    quotients = [rho(h) / h for h in (0.2, 0.1, 0.05)]
    assert quotients == sorted(quotients, reverse=True)
    assert quotients[-1] < 1e-6


def test_rho_unit_decay_identity() -> None:
    # rho' * alpha4 = rho
    alpha4 = power(1.0, 2.0)
    rho = make_rho(alpha4)
    for a in (0.3, 2.0, 5.0):
        assert rho.deriv(a) * alpha4(a) == pytest.approx(rho(a), rel=1e-12)


def test_rho_from_derived_decay_keeps_its_logarithm() -> None:
    # alpha4 ~ a^2 / pi near 0, so rho ~ exp(-pi / a) underflows below a ~ 4e-3
    rho = make_rho(make_alpha4(identity(), identity()))
    assert rho(1e-6) == 0.0
    assert math.isfinite(rho.log_value(1e-6))
    assert rho.log_value(1e-6) < -1e5
    assert rho.log_value(1.0) == 0.0
    assert rho.log_deriv(0.5) == pytest.approx(1.0 / make_alpha4(identity(), identity())(0.5), rel=1e-9)


def test_tabulated_rho_from_derived_decay() -> None:
    rho = make_rho(make_alpha4(identity(), identity()))
    table = rho.tabulated(1e-12, 1e8)
    assert is_strictly_increasing(table, default_grid())
    values = [table(s) for s in default_grid()]
    assert all(not math.isnan(v) for v in values)
    assert table(0.5) == pytest.approx(rho(0.5), rel=1e-4)
    assert table.log_value(1e-6) == pytest.approx(rho.log_value(1e-6), rel=1e-4)
    assert table.inverse(table(0.5)) == pytest.approx(0.5, rel=1e-9)
    assert math.exp(table.log_inverse(table(1e-2))) == pytest.approx(1e-2, rel=1e-9)


def test_rescaled_bounds_compare_in_log_space() -> None:
    rho = make_rho(make_alpha4(identity(), identity())).tabulated(1e-12, 1e8)
    bound = rho.compose(power(1.0, 2.0))
    assert bound(1e-3) == 0.0
    assert is_strictly_increasing(bound, np.geomspace(1e-6, 1e3, 200))


def test_gamma_for_unit_level_bound() -> None:
    gamma = make_gamma(lambda _s: 1.0)
    assert gamma(0.7) == pytest.approx(math.sqrt(1.4), rel=1e-9)
    assert gamma(0.7) / gamma.deriv(0.7) == pytest.approx(1.4, rel=1e-9)
    assert gamma(0.0) == 0.0


def test_gamma_property_holds_on_grid() -> None:
    gamma = make_gamma(lambda s: 1.0 + s)
    assert check_gamma_property(gamma) >= 1.0 - 1e-9


def test_gamma_inverts_to_the_level() -> None:
    gamma = make_gamma(lambda s: 2.0 + math.sin(s))
    for s in (1e-3, 0.5, 7.0):
        assert gamma.inverse(gamma(s)) == pytest.approx(s, rel=1e-8)


def test_gamma_vanishing_level_bound_uses_floor() -> None:
    gamma = make_gamma(lambda _s: 0.0)
    assert gamma(2.0) == pytest.approx(2.0, rel=1e-9)


def test_gamma_rejects_infinite_level_bound() -> None:
    with pytest.raises(EnvelopeFailureError, match="not strictly positive"):
        make_gamma(lambda _s: math.inf)


def test_identity_override_meets_gamma_property() -> None:
    assert check_gamma_property(identity()) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "level_bound",
    [
        lambda s: 1.0 + s,
        lambda s: 1.0 / (1.0 + s) + s * s,
        lambda s: 3.0 + math.cos(5.0 * math.log(s)),
    ],
)
def test_gamma_property_on_full_grid(level_bound: Callable[[float], float]) -> None:
    gamma = make_gamma(level_bound)
    assert check_gamma_property(gamma, default_grid()) >= 1.0 - 1e-9


def test_gamma_slope_profile_is_continuously_differentiable() -> None:
    # a = (gamma^-1)' has matching one-sided difference slopes at a grid node
    gamma = make_gamma(lambda s: 1.0 / (1.0 + s) + s * s)
    for node in (1e-6, 1e-2, 10.0, 1e3):
        step = node * 1e-6
        left = (gamma.inverse_deriv(node) - gamma.inverse_deriv(node - step)) / step
        right = (gamma.inverse_deriv(node + step) - gamma.inverse_deriv(node)) / step
        assert left == pytest.approx(right, rel=1e-2)


def test_gamma_slope_profile_never_exceeds_identity_above_grid() -> None:
    # b(s) = s^3 / 2e6 steepens towards the top of the grid
    gamma = make_gamma(lambda s: 2.0 * max(1.0, (1e3 / s) ** 2))
    for r in (2e3, 1e5, 1e8):
        assert gamma.inverse_deriv(r) <= r
