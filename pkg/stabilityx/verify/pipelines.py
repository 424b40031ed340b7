"""End-to-end constructions: UGAS to UGES, ISS to ISES, ISES to an integral estimate."""

import logging
from collections.abc import Iterator
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import replace
from typing import NamedTuple

import numpy as np

from stabilityx.exceptions import StabilityXError
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import identity
from stabilityx.kfun import make_alpha4
from stabilityx.kfun import make_gamma
from stabilityx.kfun import make_rho
from stabilityx.lyap import LyapunovCertificate
from stabilityx.lyap import estimate_L
from stabilityx.lyap import radial_quadratic
from stabilityx.sampling import annulus_points
from stabilityx.sampling import log_grid
from stabilityx.sampling import sphere_points
from stabilityx.systems import DisturbanceSignal
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import SignalSpec
from stabilityx.systems import SimulationConfig
from stabilityx.systems import Trajectory
from stabilityx.systems import make_disturbance
from stabilityx.systems import simulate
from stabilityx.types import Matrix
from stabilityx.types import Vector
from stabilityx.xform import CoordinateChange
from stabilityx.xform import InputChange
from stabilityx.xform import InputTransformedSystem
from stabilityx.xform import LevelSetChange
from stabilityx.xform import SupremumPlan
from stabilityx.xform import TrajectoryChange
from stabilityx.xform import TransformedSystem
from stabilityx.xform import build_change
from stabilityx.xform import flow_based_normal_form
from stabilityx.xform import input_change
from stabilityx.xform import pushforward

from .checks import check_commutation
from .checks import check_contraction
from .checks import check_dissipation
from .checks import check_gain_decay
from .checks import check_hinf
from .checks import check_ises
from .checks import check_normal_form
from .checks import check_uges
from .checks import sample_pairs
from .config import PipelineOptions
from .envelopes import estimate_bounds
from .envelopes import estimate_delta
from .exceptions import PipelineStageError
from .models import StabilityKind
from .models import StabilitySpec
from .models import VerificationReport
from .models import VerificationSummary

logger = logging.getLogger(__name__)

DEFAULT_OPTIONS = PipelineOptions()
# rho is tabulated on this level range; beyond it the end slopes continue as power laws
RHO_TABLE = (1e-12, 1e8)
IDENTITY_TOLERANCE = 1e-12


class UgasToUgesResult(NamedTuple):
    """Output of :func:`pipeline_ugas_to_uges`."""

    change: LevelSetChange
    transformed: TransformedSystem
    report: VerificationReport
    summary: VerificationSummary
    certificate: LyapunovCertificate
    rho: MonotoneScalarFn
    gamma: MonotoneScalarFn
    trajectories: list[Trajectory]


class IssToIsesResult(NamedTuple):
    """Output of :func:`pipeline_iss_to_ises`."""

    change: LevelSetChange
    transformed: TransformedSystem
    alpha_tilde: MonotoneScalarFn
    report: VerificationReport
    summary: VerificationSummary
    delta: MonotoneScalarFn
    trajectories: list[Trajectory]


class IsesToHinfResult(NamedTuple):
    """Output of :func:`pipeline_ises_to_hinf`."""

    inputs: InputChange
    transformed: InputTransformedSystem
    report: VerificationReport
    summary: VerificationSummary
    trajectories: list[Trajectory]


class FlowNormalFormResult(NamedTuple):
    """Output of :func:`pipeline_flow_normal_form`."""

    change: TrajectoryChange
    transformed: TransformedSystem
    report: VerificationReport
    summary: VerificationSummary
    trajectories: list[Trajectory]


class _Construction(NamedTuple):
    certificate: LyapunovCertificate
    rho: MonotoneScalarFn
    gamma: MonotoneScalarFn
    change: LevelSetChange
    transformed: TransformedSystem


@contextmanager
def _stage(name: str) -> Iterator[None]:
    try:
        yield
    except PipelineStageError:
        raise
    except (StabilityXError, ValueError, ArithmeticError) as exc:
        msg = str(exc)
        raise PipelineStageError(name, msg) from exc


def _rescaling(alpha4: MonotoneScalarFn, options: PipelineOptions) -> MonotoneScalarFn | None:
    """Tabulated ``rho``, or ``None`` when ``alpha4`` is the identity and ``rho`` is too."""
    grid = log_grid(1e-6, 1e6, 4)
    if all(abs(alpha4(a) - a) <= IDENTITY_TOLERANCE * a for a in grid):
        return None
    return make_rho(alpha4, options.quadrature).tabulated(*RHO_TABLE)


def _level_decay(cert: LyapunovCertificate, options: PipelineOptions, *, gain_conditioned: bool) -> MonotoneScalarFn:
    if cert.level_decay is not None:
        return cert.level_decay
    decay = cert.iss_gain.alpha1 if gain_conditioned and cert.iss_gain is not None else cert.decay
    if decay is None:
        msg = f"Certificate {cert.name} needs level_decay or a decay rate alpha1"
        raise PipelineStageError("decay", msg)
    bounds = cert.bounds or estimate_bounds(cert)
    return make_alpha4(decay, bounds.alpha3, options.quadrature)


def _construct(
    system: DisturbedSystem,
    cert: LyapunovCertificate,
    options: PipelineOptions,
    gamma: MonotoneScalarFn | None,
    *,
    gain_conditioned: bool,
) -> _Construction:
    with _stage("decay"):
        alpha4 = _level_decay(cert, options, gain_conditioned=gain_conditioned)
    with _stage("rescaling"):
        rescaling = _rescaling(alpha4, options)
        rho = rescaling or identity(name="rho")
        w = cert if rescaling is None else cert.compose(rescaling)
    with _stage("profile"):
        if gamma is None:

            def level_bound(s: float) -> float:
                return estimate_L(w, options.c, s, options.level_samples, options.flow)

            gamma = make_gamma(level_bound, options.level_s_max, options.level_s_min, options.level_per_decade)
    with _stage("change"):
        change = build_change(w, gamma, options.c, options.flow, rho_name=rho.name)
    with _stage("pushforward"):
        transformed = pushforward(system, change)
    logger.debug("Construction DONE; system=%s certificate=%s gamma=%s", system.name, w.name, gamma.name)
    return _Construction(certificate=w, rho=rho, gamma=gamma, change=change, transformed=transformed)


def initial_states(dim: int, count: int, r_min: float, r_max: float) -> Matrix:
    """States with log-spaced norms in ``[r_min, r_max]`` on quasi-random directions."""
    norms = np.geomspace(r_min, r_max, count) if count > 1 else np.array([r_min])
    return sphere_points(count, dim) * norms[:, None]


def disturbance_signals(system: DisturbedSystem, options: PipelineOptions, count: int) -> list[DisturbanceSignal]:
    """Seeded signals with amplitudes log-spaced up to the disturbance radius."""
    cap = options.amplitude_max
    if system.disturbance_radius is not None:
        cap = min(cap, system.disturbance_radius)
    if system.dim_d == 0 or cap == 0.0:
        return [DisturbanceSignal.zero(system.dim_d) for _ in range(count)]
    amplitudes = cap * np.geomspace(1e-3, 1.0, count) if count > 1 else np.array([cap])
    return [
        make_disturbance(
            SignalSpec(dim=system.dim_d, amplitude=float(a), mean_dwell=options.mean_dwell, horizon=options.t_end),
            options.seed + k,
        )
        for k, a in enumerate(amplitudes)
    ]


def _trajectories(
    transformed: TransformedSystem,
    y0s: Matrix,
    signals: Sequence[DisturbanceSignal],
    options: PipelineOptions,
    report_points: int,
) -> list[Trajectory]:
    cfg = SimulationConfig(report_points=report_points)

    def run(pair: tuple[Vector, DisturbanceSignal]) -> Trajectory:
        return transformed.trajectory(pair[0], pair[1], options.t_end, options.tol, cfg)

    with ThreadPoolExecutor(max_workers=options.max_workers) as pool:
        return list(pool.map(run, zip(y0s, signals, strict=True)))


def _commutation(
    change: CoordinateChange,
    system: DisturbedSystem,
    transformed: TransformedSystem,
    y0s: Matrix,
    signals: Sequence[DisturbanceSignal],
    options: PipelineOptions,
) -> VerificationReport:
    count = min(options.commutation_trajectories, len(y0s))
    # Moderate norms keep the direct simulation of f~ cheap
    starts = [change.inverse(y) for y in initial_states(change.dim, count, 0.1, 10.0)]
    return check_commutation(
        change,
        system,
        transformed,
        starts,
        list(signals[:count]),
        t_end=options.commutation_t_end,
        tol=options.tol,
        rel_tol=options.commutation_tol,
        slack=options.slack,
        stage="commutation",
    )


def pipeline_ugas_to_uges(
    system: DisturbedSystem,
    cert: LyapunovCertificate,
    options: PipelineOptions = DEFAULT_OPTIONS,
    *,
    gamma: MonotoneScalarFn | None = None,
) -> UgasToUgesResult:
    """Transform a UGAS system into one that is UGES with ``c = lambda = 1``.

    ``W = rho o V`` decays at unit rate, ``gamma`` (sampled from the Jacobian
    bound of the quotient map unless overridden) fixes the radial profile, and
    the transformed system is checked for contraction on sampled ``(y, d)``,
    for the exponential estimate on seeded trajectories and for commutation.

    Raises:
        PipelineStageError: If a stage fails; the stage name is attached.
    """
    built = _construct(system, cert, options, gamma, gain_conditioned=False)
    target = StabilitySpec(kind=StabilityKind.UGES, c=options.overshoot, lambda_=options.decay_rate, slack=options.slack)

    with _stage("contraction"):
        states, inputs = sample_pairs(
            system.dim_x,
            system.dim_d,
            options.contraction_samples,
            options.sample_r_min,
            options.sample_r_max,
            0.0 if system.unperturbed else options.amplitude_max,
        )
        contraction = check_contraction(
            built.transformed, states, inputs, options.slack, max_workers=options.max_workers, stage="contraction"
        )
    with _stage("simulation"):
        y0s = initial_states(system.dim_x, options.n_signals, options.y0_min, options.y0_max)
        signals = disturbance_signals(system, options, options.n_signals)
        trajs = _trajectories(built.transformed, y0s, signals, options, options.report_points)
        uges = check_uges(trajs, target.c, target.lambda_, target.slack, stage="uges")
    with _stage("commutation"):
        commutation = _commutation(built.change, system, built.transformed, y0s, signals, options)

    summary = VerificationSummary.of(contraction, uges, commutation)
    logger.debug("UGES pipeline DONE; system=%s passed=%s", system.name, summary.passed)
    return UgasToUgesResult(
        change=built.change,
        transformed=built.transformed,
        report=uges,
        summary=summary,
        certificate=built.certificate,
        rho=built.rho,
        gamma=built.gamma,
        trajectories=trajs,
    )


def pipeline_iss_to_ises(
    system: DisturbedSystem,
    cert: LyapunovCertificate,
    options: PipelineOptions = DEFAULT_OPTIONS,
    *,
    gamma: MonotoneScalarFn | None = None,
) -> IssToIsesResult:
    """Transform an ISS system into one that is ISES with ``c = lambda = 1``.

    The gain of the transformed system is ``alpha~ = delta^-1 o chi`` with
    ``delta`` the sampled lower envelope of ``|T^-1(y)|``.

    Raises:
        PipelineStageError: If a stage fails; the stage name is attached.
    """
    if cert.iss_gain is None:
        msg = f"Certificate {cert.name} has no ISS gain"
        raise PipelineStageError("certificate", msg)
    chi = cert.iss_gain.chi
    built = _construct(system, cert, options, gamma, gain_conditioned=True)

    with _stage("gain"):
        delta = estimate_delta(
            built.change, options.delta_r_min, options.delta_r_max, options.delta_radii, options.delta_directions
        )
        alpha_tilde = replace(delta.inverted().compose(chi), name="alpha~")
        target = StabilitySpec(
            kind=StabilityKind.ISES,
            c=options.overshoot,
            lambda_=options.decay_rate,
            alpha=alpha_tilde,
            slack=options.slack,
        )
    with _stage("gain_decay"):
        states, inputs = sample_pairs(
            system.dim_x,
            system.dim_d,
            options.gain_samples,
            options.sample_r_min,
            options.sample_r_max,
            options.amplitude_max,
        )
        gain_decay = check_gain_decay(
            built.transformed,
            radial_quadratic(system.dim_x),
            alpha_tilde,
            states,
            inputs,
            options.slack,
            max_workers=options.max_workers,
            stage="gain_decay",
        )
    with _stage("simulation"):
        y0s = initial_states(system.dim_x, options.n_signals, options.y0_min, options.y0_max)
        signals = disturbance_signals(system, options, options.n_signals)
        trajs = _trajectories(built.transformed, y0s, signals, options, options.report_points)
        ises = check_ises(trajs, alpha_tilde, target.c, target.lambda_, target.slack, stage="ises")
    with _stage("commutation"):
        commutation = _commutation(built.change, system, built.transformed, y0s, signals, options)

    summary = VerificationSummary.of(gain_decay, ises, commutation)
    logger.debug("ISES pipeline DONE; system=%s passed=%s", system.name, summary.passed)
    return IssToIsesResult(
        change=built.change,
        transformed=built.transformed,
        alpha_tilde=alpha_tilde,
        report=ises,
        summary=summary,
        delta=delta,
        trajectories=trajs,
    )


def pipeline_ises_to_hinf(
    system: DisturbedSystem | TransformedSystem,
    alpha: MonotoneScalarFn,
    options: PipelineOptions = DEFAULT_OPTIONS,
    *,
    alpha_tilde: MonotoneScalarFn | None = None,
) -> IsesToHinfResult:
    """Change the input of an ISES system (``c = lambda = 1``, gain ``alpha``).

    The new input ``v = R(d)`` makes ``W = |x|^2`` satisfy
    ``L W <= -W + |v|^2``, checked on samples, and the integral estimate
    ``int |x|^2 <= |x0|^2 + int |v|^2`` is checked on seeded trajectories.

    Raises:
        PipelineStageError: If a stage fails; the stage name is attached.
    """
    plain = system.as_system() if isinstance(system, TransformedSystem) else system
    with _stage("supremum"):
        plan = SupremumPlan(
            n_states=options.sup_states,
            n_radii=options.sup_radii,
            r_min=options.sup_r_min,
            r_max=options.sup_r_max,
        )
        inputs = input_change(plain, alpha, plan, alpha_tilde=alpha_tilde)
        transformed = InputTransformedSystem(base=plain, inputs=inputs)
    with _stage("dissipation"):
        states, values = sample_pairs(
            plain.dim_x,
            plain.dim_d,
            options.gain_samples,
            options.sample_r_min,
            options.sample_r_max,
            options.amplitude_max,
        )
        dissipation = check_dissipation(
            transformed.rhs, states, values, options.slack, max_workers=options.max_workers, stage="dissipation"
        )
    with _stage("simulation"):
        x0s = initial_states(plain.dim_x, options.n_hinf_signals, options.y0_min, options.y0_max)
        v_signals = disturbance_signals(plain, options, options.n_hinf_signals)
        cfg = SimulationConfig(report_points=options.hinf_report_points)

        def run(pair: tuple[Vector, DisturbanceSignal]) -> Trajectory:
            x0, v = pair
            d = v.map_values(inputs.inverse)
            if isinstance(system, TransformedSystem):
                traj = system.trajectory(x0, d, options.t_end, options.tol, cfg)
            else:
                traj = simulate(system, x0, d, options.t_end, options.tol, cfg)
            return replace(traj, signal=v)

        with ThreadPoolExecutor(max_workers=options.max_workers) as pool:
            trajs = list(pool.map(run, zip(x0s, v_signals, strict=True)))
        hinf = check_hinf(trajs, options.slack, stage="hinf")

    summary = VerificationSummary.of(dissipation, hinf)
    logger.debug("Integral estimate pipeline DONE; system=%s passed=%s", plain.name, summary.passed)
    return IsesToHinfResult(
        inputs=inputs,
        transformed=transformed,
        report=hinf,
        summary=summary,
        trajectories=trajs,
    )


def pipeline_flow_normal_form(
    system: DisturbedSystem,
    cert: LyapunovCertificate,
    options: PipelineOptions = DEFAULT_OPTIONS,
) -> FlowNormalFormResult:
    """Conjugate an unperturbed system to ``y' = -y`` and check the result.

    Raises:
        PipelineStageError: If the normal form cannot be built.
    """
    with _stage("normal_form"):
        change, transformed = flow_based_normal_form(system, cert, options.c, cfg=options.flow)
    with _stage("deviation"):
        samples = annulus_points(options.deviation_samples, system.dim_x, options.y0_min, options.y0_max)
        deviation = check_normal_form(transformed, samples, options.deviation_tol, options.slack, stage="deviation")
    with _stage("simulation"):
        y0s = initial_states(system.dim_x, options.n_signals, options.y0_min, options.y0_max)
        signals = [DisturbanceSignal.zero(system.dim_d) for _ in range(options.n_signals)]
        trajs = _trajectories(transformed, y0s, signals, options, options.report_points)
        uges = check_uges(trajs, options.overshoot, options.decay_rate, options.slack, stage="uges")

    summary = VerificationSummary.of(deviation, uges)
    logger.debug("Normal form pipeline DONE; system=%s passed=%s", system.name, summary.passed)
    return FlowNormalFormResult(
        change=change,
        transformed=transformed,
        report=uges,
        summary=summary,
        trajectories=trajs,
    )
