import math

import numpy as np
import pytest

from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import identity
from stabilityx.kfun import linear
from stabilityx.lyap import radial_quadratic
from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import Trajectory
from stabilityx.systems import catalog
from stabilityx.verify import InvalidGainError
from stabilityx.verify import MissingSignalError
from stabilityx.verify import StabilityKind
from stabilityx.verify import check_commutation
from stabilityx.verify import check_contraction
from stabilityx.verify import check_dissipation
from stabilityx.verify import check_gain_decay
from stabilityx.verify import check_hinf
from stabilityx.verify import check_ises
from stabilityx.verify import check_normal_form
from stabilityx.verify import check_uges
from stabilityx.verify import hinf_residual
from stabilityx.verify import sample_pairs
from stabilityx.xform import build_change
from stabilityx.xform import pushforward


def _decay_trajectory(x0: float, rate: float, t_end: float = 10.0, points: int = 201) -> Trajectory:
    times = np.linspace(0.0, t_end, points)
    return Trajectory(times=times, states=(x0 * np.exp(-rate * times)).reshape(-1, 1))


def test_uges_unit_decay_passes() -> None:
    report = check_uges([_decay_trajectory(2.0, 1.0), _decay_trajectory(-0.5, 1.0)])
    assert report.kind is StabilityKind.UGES
    assert report.passed
    assert report.worst_margin == pytest.approx(1.0, abs=1e-12)


def test_uges_slow_decay_fails() -> None:
    report = check_uges([_decay_trajectory(1.0, 0.5)])
    assert not report.passed
    assert report.worst_margin == pytest.approx(math.exp(5.0), rel=1e-9)
    assert report.witness == [1.0]


def test_uges_zero_initial_state_has_zero_margin() -> None:
    report = check_uges([_decay_trajectory(0.0, 1.0)])
    assert report.passed
    assert report.margins == [0.0]


def test_ises_constant_disturbance_from_origin() -> None:
    times = np.linspace(0.0, 5.0, 201)
    traj = Trajectory(
        times=times,
        states=(1.0 - np.exp(-times)).reshape(-1, 1),
        signal=DisturbanceSignal.constant(1.0),
    )
    report = check_ises([traj], linear(2.0))
    assert report.passed
    assert report.worst_margin <= 0.5


def test_ises_rejects_zero_gain() -> None:
    zero = MonotoneScalarFn(fn=lambda _s: 0.0, derivative=lambda _s: 0.0, name="zero")
    with pytest.raises(InvalidGainError, match="zero"):
        check_ises([_decay_trajectory(1.0, 1.0)], zero)


def test_ises_needs_signal() -> None:
    with pytest.raises(MissingSignalError, match="no disturbance signal"):
        check_ises([_decay_trajectory(1.0, 1.0)], linear(2.0))


def test_hinf_unit_decay_residual() -> None:
    times = np.linspace(0.0, 10.0, 1001)
    traj = Trajectory(times=times, states=np.exp(-times).reshape(-1, 1), signal=DisturbanceSignal.zero(1))
    # int_0^10 exp(-2t) dt - 1 = -(1 + exp(-20)) / 2
    assert hinf_residual(traj)[-1] == pytest.approx(-0.5, abs=1e-4)
    report = check_hinf(traj)
    assert report.passed
    assert report.worst_margin == pytest.approx(0.75, abs=1e-4)


def test_hinf_at_rest_is_tight() -> None:
    times = np.linspace(0.0, 1.0, 201)
    traj = Trajectory(times=times, states=np.zeros((201, 1)), signal=DisturbanceSignal.zero(1))
    report = check_hinf([traj])
    assert report.margins == [1.0]
    assert report.passed


def test_hinf_needs_signal() -> None:
    with pytest.raises(MissingSignalError):
        check_hinf(_decay_trajectory(1.0, 1.0))


@pytest.mark.parametrize(("rate", "passed"), [(1.0, True), (2.0, True), (0.5, False)])
def test_contraction_of_linear_decay(rate: float, *, passed: bool) -> None:
    states, inputs = sample_pairs(2, 0, 64)
    report = check_contraction(lambda y, _d: -rate * y, states, inputs)
    assert report.passed is passed
    assert report.worst_margin == pytest.approx(2.0 - rate, abs=1e-9)


def test_gain_decay_without_gain_on_unit_decay() -> None:
    states, inputs = sample_pairs(1, 0, 64)
    report = check_gain_decay(lambda y, _d: -y, radial_quadratic(1), None, states, inputs)
    assert report.passed
    assert report.skipped == 0
    assert report.worst_margin == pytest.approx(0.0, abs=1e-6)


def test_gain_decay_skips_inside_gain_ball() -> None:
    # 2y(-y + d) + y^2 <= 0 once |y| >= 2|d|
    states, inputs = sample_pairs(1, 1, 256, r_min=1e-2, r_max=1e1)
    report = check_gain_decay(lambda y, d: -y + d, lambda y: float(y @ y), linear(2.0), states, inputs)
    assert report.passed
    assert report.skipped > 0
    assert report.skipped + len(report.margins) == 256


def test_gain_decay_zero_gain_with_disturbance_fails() -> None:
    states, inputs = sample_pairs(1, 1, 256, r_min=1e-2, r_max=1e1)
    report = check_gain_decay(lambda y, d: -y + d, radial_quadratic(1), None, states, inputs)
    assert not report.passed


def test_dissipation_of_stable_and_unstable_fields() -> None:
    states, inputs = sample_pairs(1, 1, 128)
    assert check_dissipation(lambda x, _v: -x, states, inputs).passed
    report = check_dissipation(lambda x, _v: x, states, inputs)
    assert not report.passed
    assert report.worst_residual > 0.0


def test_normal_form_deviation() -> None:
    states, _ = sample_pairs(2, 0, 20)
    assert check_normal_form(lambda y, _d: -y, states).worst_margin == 0.0
    report = check_normal_form(lambda y, _d: -1.1 * y, states)
    assert not report.passed
    assert report.worst_residual == pytest.approx(0.1, rel=1e-9)


def test_commutation_of_halfspeed_change() -> None:
    entry = catalog("halfspeed_1d")
    change = build_change(entry.certificate, identity())
    tsys = pushforward(entry.system, change)
    report = check_commutation(
        change,
        entry.system,
        tsys,
        [np.array([1.5]), np.array([-0.3])],
        [None, None],
    )
    assert report.kind is StabilityKind.COMMUTATION
    assert report.passed
