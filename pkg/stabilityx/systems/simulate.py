"""Trajectory simulation with restarts at switch times."""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.integrate import solve_ivp

from stabilityx.types import Vector
from stabilityx.types import as_vector

from .config import SimulationConfig
from .exceptions import BlowupDetectedError
from .exceptions import SimulationError
from .models import DisturbanceSignal
from .models import DisturbedSystem
from .models import Trajectory

logger = logging.getLogger(__name__)

DEFAULT_SIMULATION = SimulationConfig()


def _captured_by_origin(system: DisturbedSystem, x: Vector, d: Vector, cfg: SimulationConfig) -> bool:
    if float(np.linalg.norm(x)) >= cfg.pin_norm:
        return False
    return bool(np.all(system(np.zeros(system.dim_x), d) == 0.0))


def simulate(
    system: DisturbedSystem,
    x0: Vector,
    signal: DisturbanceSignal | None = None,
    t_end: float = 10.0,
    tol: float = 1e-8,
    cfg: SimulationConfig = DEFAULT_SIMULATION,
) -> Trajectory:
    """Integrate ``x' = f(x, d(t))`` with RK45 and dense output.

    Integration restarts at every switch time. A state that enters the
    ``pin_norm`` ball while the origin is an equilibrium for the active value
    stays at the origin from then on.

    Raises:
        BlowupDetectedError: If ``|x|`` exceeds ``cfg.blowup_norm``.
        SimulationError: If the integrator fails.
    """
    if t_end <= 0.0:
        msg = f"t_end must be positive, got {t_end}"
        raise ValueError(msg)
    x = as_vector(x0)
    if x.size != system.dim_x:
        msg = f"Initial state has dimension {x.size}, system {system.name} expects {system.dim_x}"
        raise ValueError(msg)
    signal = signal if signal is not None else DisturbanceSignal.zero(system.dim_d)
    if not float(np.linalg.norm(x)) < cfg.blowup_norm:
        msg = f"Initial state of {system.name} already beyond the blow-up guard"
        raise BlowupDetectedError(msg)

    report = np.linspace(0.0, t_end, cfg.report_points)
    states = np.empty((report.size, system.dim_x))
    filled = 0
    pinned = False

    def blowup(_t: float, y: np.ndarray) -> float:
        return float(np.linalg.norm(y)) - cfg.blowup_norm

    blowup.terminal = True  # type: ignore[attr-defined]

    for start, end, d in signal.segments(t_end):
        last_segment = end >= t_end
        upper = int(np.searchsorted(report, end, side="right" if last_segment else "left"))
        if pinned or _captured_by_origin(system, x, d, cfg):
            pinned = True
            x = np.zeros(system.dim_x)
            states[filled:upper] = 0.0
            filled = upper
            continue

        def pin(_t: float, y: np.ndarray) -> float:
            return float(np.linalg.norm(y)) - cfg.pin_norm

        pin.terminal = True  # type: ignore[attr-defined]
        pin.direction = -1  # type: ignore[attr-defined]
        origin_equilibrium = bool(np.all(system(np.zeros(system.dim_x), d) == 0.0))
        events = [blowup, pin] if origin_equilibrium else [blowup]

        solution = solve_ivp(
            lambda _t, y, d=d: system(y, d),
            (start, end),
            x,
            method="RK45",
            rtol=tol,
            atol=cfg.atol,
            dense_output=True,
            events=events,
        )
        if solution.status == -1:
            msg = f"Integration failed for {system.name}: {solution.message}"
            raise SimulationError(msg)
        if solution.t_events[0].size:
            msg = f"Blow-up detected for {system.name} at t={float(solution.t_events[0][0])}"
            raise BlowupDetectedError(msg)

        stop = end
        if origin_equilibrium and solution.t_events[1].size:
            stop = float(solution.t_events[1][0])
            pinned = True
        for k in range(filled, upper):
            states[k] = 0.0 if report[k] > stop else solution.sol(report[k])
        filled = upper
        x = np.zeros(system.dim_x) if pinned else np.asarray(solution.y[:, -1], dtype=np.float64)

    logger.debug("Simulation DONE; system=%s t_end=%s switches=%s pinned=%s", system.name, t_end, signal.switch_times.size, pinned)
    return Trajectory(times=report, states=states, signal=signal, tol_used=tol)


def simulate_batch(
    system: DisturbedSystem,
    states: Sequence[Vector],
    signals: Sequence[DisturbanceSignal | None],
    t_end: float = 10.0,
    tol: float = 1e-8,
    cfg: SimulationConfig = DEFAULT_SIMULATION,
    max_workers: int | None = None,
) -> list[Trajectory]:
    """Simulate many initial states concurrently; results keep input order."""
    if len(states) != len(signals):
        msg = f"Got {len(states)} initial states for {len(signals)} signals"
        raise ValueError(msg)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(
            pool.map(
                lambda pair: simulate(system, pair[0], pair[1], t_end, tol, cfg),
                zip(states, signals, strict=True),
            )
        )
