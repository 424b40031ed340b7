"""Trajectory and sampled-inequality checks of the stability estimates."""

import logging
import math
from collections.abc import Callable
from collections.abc import Iterable
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
from scipy.integrate import cumulative_trapezoid

from stabilityx.differentiation import gradient as fd_gradient
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.lyap import LyapunovCertificate
from stabilityx.sampling import annulus_points
from stabilityx.sampling import ball_points
from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import SimulationConfig
from stabilityx.systems import Trajectory
from stabilityx.systems import simulate
from stabilityx.types import Matrix
from stabilityx.types import StateFunctional
from stabilityx.types import Vector
from stabilityx.types import as_vector
from stabilityx.xform import CoordinateChange
from stabilityx.xform import TransformedSystem

from .exceptions import MissingSignalError
from .models import StabilityKind
from .models import VerificationReport
from .models import require_class_k_infinity
from .models import slack_budget

logger = logging.getLogger(__name__)

Dynamics = Callable[[Vector, Vector], Vector]
T = TypeVar("T")
R = TypeVar("R")


def _evaluate(fn: Callable[[T], R], items: Iterable[T], max_workers: int | None) -> list[R]:
    if max_workers is None or max_workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))


def _ratio(observed: np.ndarray, allowed: np.ndarray) -> float:
    # 0 / 0 counts as met, x / 0 as violated
    with np.errstate(divide="ignore", invalid="ignore"):
        met = np.where(observed > 0.0, np.inf, 0.0)
        ratios = np.where(allowed > 0.0, observed / np.where(allowed > 0.0, allowed, 1.0), met)
    return float(np.max(ratios)) if ratios.size else 0.0


def sample_pairs(
    dim_x: int,
    dim_d: int,
    count: int,
    r_min: float = 1e-3,
    r_max: float = 1e3,
    amplitude: float = 1.0,
    seed: int = 0,
) -> tuple[Matrix, Matrix]:
    """Quasi-random states with log-uniform norms and disturbances in a ball."""
    states = annulus_points(count, dim_x, r_min, r_max, seed)
    inputs = ball_points(count, dim_d, amplitude, seed)
    return states, inputs


def check_uges(
    trajs: Sequence[Trajectory],
    c: float = 1.0,
    lam: float = 1.0,
    slack: float = 1e-3,
    *,
    stage: str = "",
) -> VerificationReport:
    """Check ``|x(t)| <= c exp(-lam t) |x(0)|``; zero initial states have margin 0."""
    margins = []
    for traj in trajs:
        x0 = float(np.linalg.norm(traj.initial_state))
        allowed = c * np.exp(-lam * traj.times) * x0
        margins.append(_ratio(traj.norms(), allowed))
    tol = max((traj.tol_used for traj in trajs), default=0.0)
    report = VerificationReport.from_margins(
        StabilityKind.UGES,
        margins,
        slack,
        witnesses=[traj.initial_state for traj in trajs],
        stage=stage,
        budget=slack_budget(tol),
    )
    logger.debug("UGES check DONE; trajectories=%s worst=%s", len(margins), report.worst_margin)
    return report


def _require_signal(traj: Trajectory) -> DisturbanceSignal:
    if traj.signal is None:
        msg = f"Trajectory {traj.label} carries no disturbance signal"
        raise MissingSignalError(msg)
    return traj.signal


def check_ises(
    trajs: Sequence[Trajectory],
    alpha: MonotoneScalarFn,
    c: float = 1.0,
    lam: float = 1.0,
    slack: float = 1e-3,
    *,
    kind: StabilityKind = StabilityKind.ISES,
    stage: str = "",
) -> VerificationReport:
    """Check ``|x(t)| <= max{c exp(-lam t) |x(0)|, alpha(sup_{s <= t} |d(s)|)}``.

    With ``kind=ISS_MAX`` the same bound is read as the max formulation of
    input-to-state stability with an exponential decay term.

    Raises:
        InvalidGainError: If ``alpha`` is not of class K-infinity.
        MissingSignalError: If a trajectory has no signal.
    """
    require_class_k_infinity(alpha)
    margins = []
    for traj in trajs:
        signal = _require_signal(traj)
        x0 = float(np.linalg.norm(traj.initial_state))
        gains = np.array([alpha(signal.sup_norm(float(t))) for t in traj.times])
        allowed = np.maximum(c * np.exp(-lam * traj.times) * x0, gains)
        margins.append(_ratio(traj.norms(), allowed))
    tol = max((traj.tol_used for traj in trajs), default=0.0)
    report = VerificationReport.from_margins(
        kind,
        margins,
        slack,
        witnesses=[traj.initial_state for traj in trajs],
        stage=stage,
        budget=slack_budget(tol),
    )
    logger.debug("ISES check DONE; trajectories=%s worst=%s", len(margins), report.worst_margin)
    return report


def hinf_residual(traj: Trajectory) -> np.ndarray:
    """``int_0^t |x|^2 - |x(0)|^2 - int_0^t |v|^2`` at every report time.

    The state integral is trapezoidal on the report times; the input energy is
    exact for the piecewise-constant signal.

    Raises:
        MissingSignalError: If the trajectory has no signal.
    """
    signal = _require_signal(traj)
    storage = cumulative_trapezoid(traj.norms() ** 2, traj.times, initial=0.0)
    supply = np.array([signal.energy(float(t)) for t in traj.times])
    x0 = float(traj.initial_state @ traj.initial_state)
    return np.asarray(storage - x0 - supply, dtype=np.float64)


def check_hinf(
    trajs: Trajectory | Sequence[Trajectory],
    slack: float = 1e-3,
    *,
    stage: str = "",
) -> VerificationReport:
    """Check ``int_0^t |x|^2 <= |x(0)|^2 + int_0^t |v|^2`` at every report time.

    The margin of a trajectory is ``1 + max_t residual / (1 + |x(0)|^2)``.

    Raises:
        MissingSignalError: If a trajectory has no signal.
    """
    batch = [trajs] if isinstance(trajs, Trajectory) else list(trajs)
    margins = []
    residuals = []
    for traj in batch:
        worst = float(np.max(hinf_residual(traj)))
        residuals.append(worst)
        margins.append(1.0 + worst / (1.0 + float(traj.initial_state @ traj.initial_state)))
    tol = max((traj.tol_used for traj in batch), default=0.0)
    report = VerificationReport.from_margins(
        StabilityKind.HINF,
        margins,
        slack,
        residuals=residuals,
        witnesses=[traj.initial_state for traj in batch],
        stage=stage,
        budget=slack_budget(tol),
    )
    logger.debug("Integral estimate check DONE; trajectories=%s worst=%s", len(margins), report.worst_residual)
    return report


def check_contraction(
    tsys: Dynamics,
    states: Matrix,
    inputs: Matrix,
    slack: float = 1e-3,
    *,
    max_workers: int | None = None,
    stage: str = "",
) -> VerificationReport:
    """Check ``<f~(y, d), y> + |y|^2 <= slack |y|^2`` at every sample."""

    def residual(pair: tuple[Vector, Vector]) -> tuple[float, float]:
        y, d = pair
        scale = float(y @ y)
        return float(as_vector(tsys(y, d)) @ y) + scale, scale

    results = _evaluate(residual, list(zip(states, inputs, strict=True)), max_workers)
    residuals = [r for r, _ in results]
    margins = [1.0 + r / s if s > 0.0 else 1.0 for r, s in results]
    report = VerificationReport.from_margins(
        StabilityKind.CONTRACTION,
        margins,
        slack,
        residuals=residuals,
        witnesses=[np.concatenate([y, d]) for y, d in zip(states, inputs, strict=True)],
        stage=stage,
        budget=slack_budget(0.0),
    )
    logger.debug("Contraction check DONE; samples=%s worst=%s", len(margins), report.worst_margin)
    return report


def _value_and_gradient(w: LyapunovCertificate | StateFunctional) -> tuple[StateFunctional, Callable[[Vector], Vector]]:
    if isinstance(w, LyapunovCertificate):
        return w.__call__, w.gradient
    return w, lambda y: fd_gradient(w, y)


def check_gain_decay(
    tsys: Dynamics,
    w_tilde: LyapunovCertificate | StateFunctional,
    alpha_tilde: MonotoneScalarFn | None,
    states: Matrix,
    inputs: Matrix,
    slack: float = 1e-3,
    *,
    kind: StabilityKind = StabilityKind.GAIN_DECAY,
    max_workers: int | None = None,
    stage: str = "",
) -> VerificationReport:
    """Check ``|y| > alpha~(|d|) => L W~(y) + W~(y) <= slack W~(y)``.

    ``alpha_tilde=None`` is the zero gain. Samples inside the gain ball are
    skipped and counted.
    """
    value, grad = _value_and_gradient(w_tilde)
    pairs = [
        (y, d)
        for y, d in zip(states, inputs, strict=True)
        if alpha_tilde is None or float(np.linalg.norm(y)) > alpha_tilde(float(np.linalg.norm(d)))
    ]
    skipped = len(states) - len(pairs)

    def residual(pair: tuple[Vector, Vector]) -> tuple[float, float]:
        y, d = pair
        w = float(value(y))
        return float(grad(y) @ as_vector(tsys(y, d))) + w, w

    results = _evaluate(residual, pairs, max_workers)
    report = VerificationReport.from_margins(
        kind,
        [1.0 + r / w if w > 0.0 else 1.0 for r, w in results],
        slack,
        residuals=[r for r, _ in results],
        witnesses=[np.concatenate([y, d]) for y, d in pairs],
        skipped=skipped,
        stage=stage,
        budget=slack_budget(0.0),
    )
    logger.debug("Gain decay check DONE; samples=%s skipped=%s worst=%s", len(results), skipped, report.worst_margin)
    return report


def check_dissipation(
    system: Dynamics,
    states: Matrix,
    inputs: Matrix,
    slack: float = 1e-3,
    *,
    max_workers: int | None = None,
    stage: str = "",
) -> VerificationReport:
    """Check ``L W + W - |v|^2 <= slack (W + |v|^2)`` for ``W = |x|^2``."""

    def residual(pair: tuple[Vector, Vector]) -> tuple[float, float]:
        x, v = pair
        w = float(x @ x)
        supply = float(v @ v)
        return 2.0 * float(as_vector(system(x, v)) @ x) + w - supply, w + supply

    results = _evaluate(residual, list(zip(states, inputs, strict=True)), max_workers)
    margins = [1.0 + r / s if s > 0.0 else (1.0 if r <= 0.0 else math.inf) for r, s in results]
    report = VerificationReport.from_margins(
        StabilityKind.DISSIPATION,
        margins,
        slack,
        residuals=[r for r, _ in results],
        witnesses=[np.concatenate([x, v]) for x, v in zip(states, inputs, strict=True)],
        stage=stage,
        budget=slack_budget(0.0),
    )
    logger.debug("Dissipation check DONE; samples=%s worst=%s", len(margins), report.worst_residual)
    return report


def check_commutation(
    change: CoordinateChange,
    system: DisturbedSystem,
    tsys: TransformedSystem,
    x0s: Sequence[Vector],
    signals: Sequence[DisturbanceSignal | None],
    *,
    t_end: float = 1.0,
    tol: float = 1e-8,
    rel_tol: float = 1e-4,
    slack: float = 1e-3,
    cfg: SimulationConfig | None = None,
    stage: str = "",
) -> VerificationReport:
    """Compare ``T(phi(t, x, d))`` with a direct simulation of ``phi~(t, T(x), d)``.

    The margin of a pair is ``max_t |error| / (rel_tol (1 + |T(phi)|))``.
    """
    cfg = cfg or SimulationConfig()
    direct_system = tsys.as_system()
    margins = []
    for x0, signal in zip(x0s, signals, strict=True):
        mapped = simulate(system, x0, signal, t_end, tol, cfg).map_states(change.forward)
        direct = simulate(direct_system, change.forward(x0), signal, t_end, tol, cfg)
        error = np.linalg.norm(mapped.states - direct.states, axis=1)
        margins.append(float(np.max(error / (rel_tol * (1.0 + mapped.norms())))))
    report = VerificationReport.from_margins(
        StabilityKind.COMMUTATION,
        margins,
        slack,
        witnesses=[as_vector(x0) for x0 in x0s],
        stage=stage,
        budget=slack_budget(tol),
    )
    logger.debug("Commutation check DONE; pairs=%s worst=%s", len(margins), report.worst_margin)
    return report


def check_normal_form(
    tsys: Dynamics,
    states: Matrix,
    rel_tol: float = 1e-5,
    slack: float = 1e-3,
    *,
    stage: str = "",
) -> VerificationReport:
    """Check ``|f~(y) + y| <= rel_tol |y|`` at every sampled ``y``."""
    margins = []
    residuals = []
    for y in states:
        norm = float(np.linalg.norm(y))
        deviation = float(np.linalg.norm(as_vector(tsys(y, np.zeros(0))) + y)) / norm
        residuals.append(deviation)
        margins.append(deviation / rel_tol)
    report = VerificationReport.from_margins(
        StabilityKind.NORMAL_FORM,
        margins,
        slack,
        residuals=residuals,
        witnesses=list(states),
        stage=stage,
        budget=slack_budget(0.0),
    )
    logger.debug("Normal form check DONE; samples=%s worst=%s", len(margins), report.worst_residual)
    return report
