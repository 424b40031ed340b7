"""Run configuration: TOML schema and its resolution into library objects."""

import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Literal

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from stabilityx.kfun import MonotoneScalarFn
from stabilityx.lyap import ComparisonBounds
from stabilityx.lyap import IssGain
from stabilityx.lyap import LyapunovCertificate
from stabilityx.systems import DisturbedSystem
from stabilityx.systems import UnknownSystemError
from stabilityx.systems import catalog
from stabilityx.verify import PipelineOptions

from .exceptions import ConfigError
from .expressions import compile_functional
from .expressions import compile_scalar
from .expressions import compile_vector_field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

PipelineName = Literal["ugas2uges", "iss2ises", "ises2hinf", "flownorm"]


class SystemConfig(BaseModel):
    """A catalog system or an inline right-hand side."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    catalog: str | None = Field(default=None, description="Name of a built-in system")
    rhs: list[str] | None = Field(default=None, description="One expression in x1..xn, d1..dm per state component")
    disturbance_dim: int = Field(default=0, ge=0, description="Dimension m of the disturbance")
    disturbance_radius: float | None = Field(default=None, ge=0.0, description="Radius of D; omitted means R^m")
    name: str = Field(default="inline", description="Label of an inline system")

    @model_validator(mode="after")
    def _one_source(self) -> "SystemConfig":
        if (self.catalog is None) == (self.rhs is None):
            msg = "system needs exactly one of 'catalog' and 'rhs'"
            raise ValueError(msg)
        if self.rhs is not None and not self.rhs:
            msg = "system.rhs needs at least one component"
            raise ValueError(msg)
        return self


class CertificateConfig(BaseModel):
    """A catalog certificate or an inline one; scalar functions are expressions in ``r``."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    catalog: str | None = Field(default=None, description="Take the certificate of this built-in system")
    value: str | None = Field(default=None, description="V as an expression in x1..xn")
    decay: str | None = Field(default=None, description="alpha1 with L_f V <= -alpha1(|x|)")
    level_decay: str | None = Field(default=None, description="alpha4 with L_f V <= -alpha4(V)")
    alpha2: str | None = Field(default=None, description="Lower comparison bound")
    alpha3: str | None = Field(default=None, description="Upper comparison bound")
    chi: str | None = Field(default=None, description="ISS gain chi")
    iss_decay: str | None = Field(default=None, description="Decay alpha1 outside the ISS gain ball")
    gain: str | None = Field(default=None, description="ISES gain alpha with c = lambda = 1")

    @model_validator(mode="after")
    def _bounds_in_pairs(self) -> "CertificateConfig":
        if (self.alpha2 is None) != (self.alpha3 is None):
            msg = "certificate needs both 'alpha2' and 'alpha3' or neither"
            raise ValueError(msg)
        if (self.chi is None) != (self.iss_decay is None):
            msg = "certificate needs both 'chi' and 'iss_decay' or neither"
            raise ValueError(msg)
        return self


class OverridesConfig(BaseModel):
    """Optional replacements of pipeline defaults."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    gamma: str | None = Field(default=None, description="Level profile gamma as an expression in r")
    c: float | None = Field(default=None, gt=0.0, description="Reference level of the quotient map")
    decay_rate: float | None = Field(default=None, gt=0.0, description="Rate lambda of the checked estimate")
    overshoot: float | None = Field(default=None, ge=1.0, description="Constant c of the checked estimate")
    tol: float | None = Field(default=None, gt=0.0, description="Relative integration tolerance")
    slack: float | None = Field(default=None, ge=0.0, description="Verification slack")
    seed: int | None = Field(default=None, ge=0, description="Seed of the first signal")
    signals: int | None = Field(default=None, ge=1, description="Trajectories per check")
    hinf_signals: int | None = Field(default=None, ge=1, description="Trajectories of the integral estimate")
    t_end: float | None = Field(default=None, gt=0.0, description="Simulation horizon")
    amplitude_max: float | None = Field(default=None, ge=0.0, description="Largest signal amplitude")
    contraction_samples: int | None = Field(default=None, ge=1, description="Samples of the contraction check")
    gain_samples: int | None = Field(default=None, ge=1, description="Samples of gain-decay and dissipation checks")
    sup_states: int | None = Field(default=None, ge=1, description="Samples per radius of the input supremum")
    sup_radii: int | None = Field(default=None, ge=2, description="Radii of the input supremum")


class OutputsConfig(BaseModel):
    """Where artifacts go."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    directory: str = Field(default="out", description="Output directory, relative to the working directory")


class RunConfig(BaseModel):
    """One pipeline run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    pipeline: PipelineName
    system: SystemConfig
    certificate: CertificateConfig = Field(default_factory=CertificateConfig)
    overrides: OverridesConfig = Field(default_factory=OverridesConfig)
    outputs: OutputsConfig = Field(default_factory=OutputsConfig)

    def options(self, **cli: float | None) -> PipelineOptions:
        """Pipeline options with config overrides, then command-line flags, applied."""
        overrides = self.overrides.model_dump(exclude_none=True, exclude={"gamma"})
        if "signals" in overrides:
            overrides["n_signals"] = overrides.pop("signals")
        if "hinf_signals" in overrides:
            overrides["n_hinf_signals"] = overrides.pop("hinf_signals")
        overrides.update({key: value for key, value in cli.items() if value is not None})
        try:
            return PipelineOptions(**overrides)
        except ValidationError as exc:
            msg = f"Invalid overrides: {exc}"
            raise ConfigError(msg) from exc


def load_config(path: Path) -> RunConfig:
    """Read and validate a TOML run configuration.

    Raises:
        ConfigError: If the file is missing, malformed or fails validation.
    """
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        msg = f"Cannot read {path}: {exc}"
        raise ConfigError(msg) from exc
    except tomllib.TOMLDecodeError as exc:
        msg = f"Malformed TOML in {path}: {exc}"
        raise ConfigError(msg) from exc
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        msg = f"Invalid configuration {path}: {exc}"
        raise ConfigError(msg) from exc
    logger.debug("Config LOADED; path=%s pipeline=%s", path, config.pipeline)
    return config


def resolve_system(config: SystemConfig) -> DisturbedSystem:
    """Build the configured system.

    Raises:
        ConfigError: On an unknown catalog name or a bad expression.
    """
    if config.catalog is not None:
        try:
            return catalog(config.catalog).system
        except UnknownSystemError as exc:
            raise ConfigError(str(exc)) from exc
    rhs = config.rhs or []
    return DisturbedSystem(
        rhs=compile_vector_field(rhs, config.disturbance_dim),
        dim_x=len(rhs),
        dim_d=config.disturbance_dim,
        disturbance_radius=config.disturbance_radius if config.disturbance_dim else 0.0,
        name=config.name,
    )


def _scalar(text: str | None, name: str) -> MonotoneScalarFn | None:
    return None if text is None else compile_scalar(text, name)


def resolve_certificate(run: RunConfig, dim: int) -> LyapunovCertificate:
    """Build the configured certificate, defaulting to the catalog system's own.

    Raises:
        ConfigError: If no certificate is available or an expression is bad.
    """
    cert_config = run.certificate
    source = cert_config.catalog or (run.system.catalog if cert_config.value is None else None)
    if source is not None:
        try:
            cert = catalog(source).certificate
        except UnknownSystemError as exc:
            raise ConfigError(str(exc)) from exc
    elif cert_config.value is not None:
        value, grad = compile_functional(cert_config.value, dim)
        cert = LyapunovCertificate(value=value, dim=dim, grad=grad, name=cert_config.value)
    else:
        msg = "Inline systems need certificate.value or certificate.catalog"
        raise ConfigError(msg)
    if cert.dim != dim:
        msg = f"Certificate {cert.name} has dimension {cert.dim}, system has {dim}"
        raise ConfigError(msg)

    updates: dict[str, object] = {}
    if cert_config.decay is not None:
        updates["decay"] = compile_scalar(cert_config.decay, "alpha1")
    if cert_config.level_decay is not None:
        updates["level_decay"] = compile_scalar(cert_config.level_decay, "alpha4")
    if cert_config.alpha2 is not None and cert_config.alpha3 is not None:
        updates["bounds"] = ComparisonBounds(
            alpha2=compile_scalar(cert_config.alpha2, "alpha2"),
            alpha3=compile_scalar(cert_config.alpha3, "alpha3"),
        )
    if cert_config.chi is not None and cert_config.iss_decay is not None:
        updates["iss_gain"] = IssGain(
            chi=compile_scalar(cert_config.chi, "chi"),
            alpha1=compile_scalar(cert_config.iss_decay, "alpha1"),
        )
    cert = replace(cert, **updates)  # type: ignore[arg-type]

    if run.pipeline == "iss2ises" and cert.iss_gain is None:
        msg = f"Pipeline iss2ises needs an ISS gain; certificate {cert.name} has none"
        raise ConfigError(msg)
    if run.pipeline == "ises2hinf" and cert.iss_gain is None and cert_config.gain is None:
        msg = "Pipeline ises2hinf needs certificate.gain or an ISS gain to construct one"
        raise ConfigError(msg)
    return cert


def resolve_gamma(run: RunConfig) -> MonotoneScalarFn | None:
    """The level-profile override, if any."""
    return _scalar(run.overrides.gamma, "gamma")


def resolve_gain(run: RunConfig) -> MonotoneScalarFn | None:
    """The ISES gain of an ises2hinf run, if given directly."""
    return _scalar(run.certificate.gain, "alpha")
