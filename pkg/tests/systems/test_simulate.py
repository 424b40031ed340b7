import math

import numpy as np
import pytest

from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import SimulationError
from stabilityx.systems import catalog
from stabilityx.systems import simulate
from stabilityx.systems import simulate_batch


@pytest.fixture
def decay() -> DisturbedSystem:
    return DisturbedSystem(rhs=lambda x, _d: -x, dim_x=1, name="decay")


def test_exponential_decay(decay: DisturbedSystem) -> None:
    traj = simulate(decay, np.array([1.0]), t_end=1.0)
    assert traj.times[-1] == 1.0
    assert traj.states[-1, 0] == pytest.approx(math.exp(-1.0), abs=1e-7)


def test_origin_stays_pinned(decay: DisturbedSystem) -> None:
    traj = simulate(decay, np.array([0.0]), t_end=5.0)
    assert np.all(traj.states == 0.0)


def test_constant_disturbance_variation_of_constants() -> None:
    entry = catalog("iss_scalar")
    traj = simulate(entry.system, np.array([0.0]), DisturbanceSignal.constant(1.0), t_end=1.0)
    assert traj.states[-1, 0] == pytest.approx(1.0 - math.exp(-1.0), abs=1e-7)


def test_restart_at_switch_times() -> None:
    entry = catalog("iss_scalar")
    signal = DisturbanceSignal(switch_times=np.array([1.0]), values=np.array([1.0, -1.0]))
    traj = simulate(entry.system, np.array([0.0]), signal, t_end=2.0)
    x1 = 1.0 - math.exp(-1.0)
    expected = x1 * math.exp(-1.0) - (1.0 - math.exp(-1.0))
    assert traj.states[-1, 0] == pytest.approx(expected, abs=1e-7)


def test_rotation_matches_matrix_exponential() -> None:
    entry = catalog("rotation_r2")
    x0 = np.array([1.0, -0.5])
    traj = simulate(entry.system, x0, t_end=2.0)
    np.testing.assert_allclose(traj.states[-1], entry.reference["solution"](2.0, x0), atol=1e-7)


def test_finite_escape_is_reported() -> None:
    system = DisturbedSystem(rhs=lambda x, _d: x * x, dim_x=1, name="escape")
    with pytest.raises(SimulationError):
        simulate(system, np.array([1.0]), t_end=2.0)


def test_rejects_nonpositive_horizon(decay: DisturbedSystem) -> None:
    with pytest.raises(ValueError, match="t_end"):
        simulate(decay, np.array([1.0]), t_end=0.0)


def test_rejects_wrong_state_dimension(decay: DisturbedSystem) -> None:
    with pytest.raises(ValueError, match="dimension"):
        simulate(decay, np.array([1.0, 2.0]))


def test_batch_keeps_input_order(decay: DisturbedSystem) -> None:
    states = [np.array([1.0]), np.array([2.0]), np.array([-3.0])]
    trajectories = simulate_batch(decay, states, [None] * 3, t_end=1.0, max_workers=2)
    assert [traj.initial_state[0] for traj in trajectories] == [1.0, 2.0, -3.0]


def test_batch_rejects_mismatched_signals(decay: DisturbedSystem) -> None:
    with pytest.raises(ValueError, match="signals"):
        simulate_batch(decay, [np.array([1.0])], [])


def test_trajectory_csv(decay: DisturbedSystem) -> None:
    text = simulate(decay, np.array([-1.0]), t_end=1.0).to_csv()
    lines = text.splitlines()
    assert lines[0] == "t,x1,norm"
    assert len(lines) == 202
    assert lines[1] == "0,-1,1"
