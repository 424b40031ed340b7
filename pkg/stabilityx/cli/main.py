"""``stabilityx`` command: run a pipeline from a TOML config, or list the catalog."""

import argparse
import logging
import sys
from collections.abc import Sequence
from enum import IntEnum
from pathlib import Path
from typing import NamedTuple
from typing import NoReturn

import numpy as np

from stabilityx.exceptions import StabilityXError
from stabilityx.kfun import MonotoneScalarFn
from stabilityx.lyap import LyapunovCertificate
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import Trajectory
from stabilityx.systems import catalog
from stabilityx.systems import catalog_names
from stabilityx.verify import PipelineOptions
from stabilityx.verify import VerificationSummary
from stabilityx.verify import initial_states
from stabilityx.verify import pipeline_flow_normal_form
from stabilityx.verify import pipeline_iss_to_ises
from stabilityx.verify import pipeline_ises_to_hinf
from stabilityx.verify import pipeline_ugas_to_uges
from stabilityx.verify import render_report
from stabilityx.xform import change_table
from stabilityx.xform import input_table

from .config import RunConfig
from .config import load_config
from .config import resolve_certificate
from .config import resolve_gain
from .config import resolve_gamma
from .config import resolve_system
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

TABLE_POINTS = 64
TABLE_RANGE = (1e-2, 1e2)


class ExitCode(IntEnum):
    """Process exit codes; every run ends in exactly one."""

    OK = 0
    CHECK_FAILED = 2
    CONSTRUCTION_ERROR = 3
    CONFIG_ERROR = 4


class ResolvedRun(NamedTuple):
    """The objects a configuration names, compiled."""

    system: DisturbedSystem
    certificate: LyapunovCertificate
    gamma: MonotoneScalarFn | None
    gain: MonotoneScalarFn | None


class RunOutcome(NamedTuple):
    """What a pipeline run leaves behind."""

    summary: VerificationSummary
    trajectories: list[Trajectory]
    table: str


class _ArgumentParser(argparse.ArgumentParser):
    # Usage errors are configuration errors, not argparse's exit status 2
    def error(self, message: str) -> NoReturn:
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    """Command-line interface."""
    parser = _ArgumentParser(prog="stabilityx", description="Changes of variables for stability estimates.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages to standard error")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="Run the pipeline of a TOML config")
    run_parser.add_argument("config", type=Path, help="Path to the run configuration")
    run_parser.add_argument("--out", type=Path, default=None, help="Output directory (overrides outputs.directory)")
    run_parser.add_argument("--seed", type=int, default=None, help="Seed of the first disturbance signal")
    run_parser.add_argument("--tol", type=float, default=None, help="Relative integration tolerance")
    run_parser.add_argument("--signals", type=int, default=None, help="Seeded trajectories per check")

    list_parser = commands.add_parser("list", help="List the built-in systems")
    list_parser.add_argument("--machine", action="store_true", help="Tab-separated output with fixed columns")
    return parser


def list_catalog(*, machine: bool = False) -> None:
    """Print catalog names, dimensions and certificate availability."""
    header = ("name", "dim_x", "dim_d", "certificate", "iss_gain")
    rows = []
    for name in catalog_names():
        entry = catalog(name)
        rows.append((
            name,
            str(entry.system.dim_x),
            str(entry.system.dim_d),
            "yes",
            "yes" if entry.certificate.iss_gain is not None else "no",
            entry.description,
        ))
    if machine:
        print("\t".join(header))
        for row in rows:
            print("\t".join(row[: len(header)]))
        return
    print(f"{'name':<14} {'dim_x':>5} {'dim_d':>5} {'certificate':<11} {'iss_gain':<8} description")
    for name, dim_x, dim_d, cert, gain, description in rows:
        print(f"{name:<14} {dim_x:>5} {dim_d:>5} {cert:<11} {gain:<8} {description}")


def resolve_run(config: RunConfig) -> ResolvedRun:
    """Compile the system, certificate and scalar overrides of ``config``.

    Raises:
        ConfigError: If a name or an expression cannot be resolved.
    """
    try:
        system = resolve_system(config.system)
        return ResolvedRun(
            system=system,
            certificate=resolve_certificate(config, system.dim_x),
            gamma=resolve_gamma(config),
            gain=resolve_gain(config),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        msg = f"Cannot resolve the {config.pipeline} configuration: {exc}"
        raise ConfigError(msg) from exc


def execute(config: RunConfig, options: PipelineOptions) -> RunOutcome:
    """Run the configured pipeline.

    Raises:
        ConfigError: If the system, certificate or an expression cannot be resolved.
        PipelineStageError: If a construction stage fails.
    """
    system, cert, gamma, gain = resolve_run(config)
    states = initial_states(system.dim_x, TABLE_POINTS, *TABLE_RANGE)

    if config.pipeline == "ugas2uges":
        uges = pipeline_ugas_to_uges(system, cert, options, gamma=gamma)
        return RunOutcome(uges.summary, uges.trajectories, change_table(uges.change, states))
    if config.pipeline == "iss2ises":
        ises = pipeline_iss_to_ises(system, cert, options, gamma=gamma)
        return RunOutcome(ises.summary, ises.trajectories, change_table(ises.change, states))
    if config.pipeline == "flownorm":
        normal = pipeline_flow_normal_form(system, cert, options)
        return RunOutcome(normal.summary, normal.trajectories, change_table(normal.change, states))

    if gain is not None:
        hinf = pipeline_ises_to_hinf(system, gain, options)
        values = initial_states(system.dim_d, TABLE_POINTS, *TABLE_RANGE) if system.dim_d else np.empty((0, 0))
        return RunOutcome(hinf.summary, hinf.trajectories, input_table(hinf.inputs, values))
    ises = pipeline_iss_to_ises(system, cert, options, gamma=gamma)
    hinf = pipeline_ises_to_hinf(ises.transformed, ises.alpha_tilde, options)
    return RunOutcome(ises.summary.merge(hinf.summary), hinf.trajectories, change_table(ises.change, states))


def write_artifacts(directory: Path, outcome: RunOutcome) -> None:
    """Write ``trajectories/traj_NNN.csv``, ``change_table.csv`` and ``report.txt``."""
    trajectories = directory / "trajectories"
    trajectories.mkdir(parents=True, exist_ok=True)
    for index, traj in enumerate(outcome.trajectories):
        (trajectories / f"traj_{index:03d}.csv").write_text(traj.to_csv(), encoding="utf-8", newline="\n")
    (directory / "change_table.csv").write_text(outcome.table, encoding="utf-8", newline="\n")
    (directory / "report.txt").write_text(render_report(outcome.summary), encoding="utf-8", newline="\n")
    logger.debug("Artifacts WRITTEN; directory=%s trajectories=%s", directory, len(outcome.trajectories))


def run(
    config_path: Path,
    out: Path | None = None,
    seed: int | None = None,
    tol: float | None = None,
    signals: int | None = None,
) -> int:
    """Run a configuration and write its artifacts; return the exit code."""
    try:
        config = load_config(config_path)
        options = config.options(seed=seed, tol=tol, n_signals=signals)
        outcome = execute(config, options)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR
    except StabilityXError as exc:
        print(f"construction error: {exc}", file=sys.stderr)
        return ExitCode.CONSTRUCTION_ERROR

    directory = out if out is not None else Path(config.outputs.directory)
    try:
        write_artifacts(directory, outcome)
    except OSError as exc:
        print(f"config error: cannot write to {directory}: {exc}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR
    for report in outcome.summary.reports:
        print(report.headline())
    if not outcome.summary.passed:
        return ExitCode.CHECK_FAILED
    return ExitCode.OK


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``stabilityx`` script."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"config error: {exc}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "list":
        list_catalog(machine=args.machine)
        return ExitCode.OK
    return run(args.config, out=args.out, seed=args.seed, tol=args.tol, signals=args.signals)
