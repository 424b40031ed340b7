import numpy as np
import pytest

from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import power
from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import catalog
from stabilityx.verify import check_uges
from stabilityx.xform import CoordinateChange
from stabilityx.xform import RadialChange
from stabilityx.xform import pushforward


def _cubic_change() -> RadialChange:
    profile = catalog("cubic_1d").reference["T_profile"]
    assert isinstance(profile, MonotoneScalarFn)
    return RadialChange(profile, 1, name="cubic")


def test_radial_change_matches_closed_form() -> None:
    entry = catalog("cubic_1d")
    change = _cubic_change()
    for x in (-2.0, -0.4, 0.3, 1.5):
        assert change(np.array([x]))[0] == pytest.approx(entry.reference["T"](np.array([x]))[0], rel=1e-12)
    np.testing.assert_array_equal(change(np.zeros(1)), np.zeros(1))
    assert change.provenance.construction == "radial"


def test_radial_change_round_trip() -> None:
    change = _cubic_change()
    for x in (-3.0, -0.5, 0.2, 0.8, 4.0):
        assert change.inverse(change(np.array([x])))[0] == pytest.approx(x, rel=1e-9)


def test_radial_jacobian_matches_differences() -> None:
    change = RadialChange(power(0.5, 3.0), 2)
    x = np.array([0.6, -1.1])
    np.testing.assert_allclose(change.jacobian(x), CoordinateChange.jacobian(change, x), rtol=1e-6, atol=1e-8)


def test_cubic_transform_decays_faster_than_unit_rate() -> None:
    entry = catalog("cubic_1d")
    change = _cubic_change()
    tsys = pushforward(entry.system, change)
    for x in (0.3, 1.0, 2.0):
        y = change(np.array([x]))
        assert tsys(y)[0] == pytest.approx(-(1.0 + x * x) * y[0], rel=1e-6)
        assert abs(tsys(y)[0]) > abs(y[0])


def test_cubic_transform_trajectories_are_exponentially_stable() -> None:
    entry = catalog("cubic_1d")
    tsys = pushforward(entry.system, _cubic_change())
    signal = DisturbanceSignal.zero(0)
    trajs = [tsys.trajectory(np.array([y0]), signal, t_end=5.0) for y0 in (1e-3, -0.05, 0.5, 3.0)]
    assert check_uges(trajs, 1.0, 1.0, 1e-3).passed


def test_halfspeed_reference_as_radial_change() -> None:
    entry = catalog("halfspeed_1d")
    tsys = pushforward(entry.system, RadialChange(power(1.0, 2.0), 1))
    assert tsys(np.array([1.0]))[0] == pytest.approx(-1.0, rel=1e-12)
    assert tsys(np.array([-4.0]))[0] == pytest.approx(4.0, rel=1e-12)
