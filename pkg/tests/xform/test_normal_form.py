import numpy as np
import pytest

from stabilityx.lyap import radial_quadratic
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import catalog
from stabilityx.xform import NormalFormError
from stabilityx.xform import NotClassKInfinityError
from stabilityx.xform import flow_based_normal_form


def _decay(dim: int) -> DisturbedSystem:
    return DisturbedSystem(rhs=lambda x, _d: -x, dim_x=dim, name=f"decay_{dim}")


def test_unit_decay_is_its_own_normal_form() -> None:
    change, tsys = flow_based_normal_form(_decay(1), radial_quadratic(1))
    assert change(np.array([2.0]))[0] == pytest.approx(2.0, rel=1e-8)
    assert change.level_function(np.array([-3.0])) == pytest.approx(3.0, rel=1e-8)
    assert tsys(np.array([2.0]))[0] == pytest.approx(-2.0, abs=1e-5)


def test_normal_form_vanishes_at_origin() -> None:
    change, tsys = flow_based_normal_form(_decay(1), radial_quadratic(1))
    assert tsys(np.array([0.0]))[0] == 0.0
    assert change(np.array([0.0]))[0] == 0.0


def test_planar_normal_form_is_unit_decay() -> None:
    _, tsys = flow_based_normal_form(_decay(2), radial_quadratic(2))
    rng = np.random.default_rng(5)
    for y in rng.uniform(-2.0, 2.0, size=(5, 2)):
        np.testing.assert_allclose(tsys(y), -y, atol=1e-5)


def test_halfspeed_normal_form_round_trip() -> None:
    entry = catalog("halfspeed_1d")
    change, tsys = flow_based_normal_form(entry.system, entry.certificate)
    # t(x) = 2 ln|x|, so T(x) = sign(x) x^2
    assert change(np.array([3.0]))[0] == pytest.approx(9.0, rel=1e-8)
    assert change.inverse(np.array([9.0]))[0] == pytest.approx(3.0, rel=1e-8)
    assert tsys(np.array([0.5]))[0] == pytest.approx(-0.5, abs=1e-5)


def test_disturbed_system_is_rejected() -> None:
    entry = catalog("iss_scalar")
    with pytest.raises(NormalFormError, match="D = "):
        flow_based_normal_form(entry.system, entry.certificate)


@pytest.mark.slow
def test_bounded_level_function_is_rejected() -> None:
    # x' = -x^3 reaches V = 1 within time 1/2 from anywhere outside
    entry = catalog("cubic_1d")
    with pytest.raises(NotClassKInfinityError, match="bounded"):
        flow_based_normal_form(entry.system, entry.certificate)
