"""Stability targets and verification reports."""

import math
from collections.abc import Iterable
from enum import Enum

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from stabilityx.kfun import MonotoneScalarFn
from stabilityx.kfun import is_strictly_increasing
from stabilityx.kfun import is_unbounded
from stabilityx.sampling import log_grid

from .exceptions import InvalidGainError

FD_RELATIVE_ERROR = 1e-4


class StabilityKind(str, Enum):
    """The estimate a report checks."""

    UGES = "UGES"
    ISS_MAX = "ISS-max"
    ISES = "ISES"
    HINF = "HINF"
    CONTRACTION = "CONTRACTION"
    GAIN_DECAY = "GAIN-DECAY"
    COMMUTATION = "COMMUTATION"
    DISSIPATION = "DISSIPATION"
    NORMAL_FORM = "NORMAL-FORM"


def require_class_k_infinity(alpha: MonotoneScalarFn) -> None:
    """Reject gains that are not of class K-infinity on the working grid.

    Raises:
        InvalidGainError: If ``alpha(0) != 0``, ``alpha`` is not strictly
            increasing, or it stays bounded.
    """
    if alpha(0.0) != 0.0:
        msg = f"Gain {alpha.name} must vanish at 0, got {alpha(0.0)}"
        raise InvalidGainError(msg)
    if not is_strictly_increasing(alpha, log_grid(1e-6, 1e3, 4)):
        msg = f"Gain {alpha.name} is not strictly increasing"
        raise InvalidGainError(msg)
    if not is_unbounded(alpha):
        msg = f"Gain {alpha.name} is bounded"
        raise InvalidGainError(msg)


def slack_budget(tol: float, envelope: float = 0.0) -> dict[str, float]:
    """Itemized error sources a report's slack has to absorb."""
    return {"integration": tol, "finite_difference": FD_RELATIVE_ERROR, "envelope": envelope}


class StabilitySpec(BaseModel):
    """Exponential target ``|x(t)| <= max{c exp(-lambda t) |x0|, alpha(sup |d|)}``."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    kind: StabilityKind
    c: float = Field(default=1.0, ge=1.0, description="Overshoot constant")
    lambda_: float = Field(default=1.0, gt=0.0, alias="lambda", description="Decay rate")
    alpha: MonotoneScalarFn | None = Field(default=None, description="Gain of class K-infinity")
    slack: float = Field(default=1e-3, ge=0.0, description="Relative slack on every margin")

    @model_validator(mode="after")
    def _check_gain(self) -> "StabilitySpec":
        if self.alpha is not None:
            require_class_k_infinity(self.alpha)
        return self


class VerificationReport(BaseModel):
    """Outcome of one check.

    Trajectory checks record ``observed / allowed`` per trajectory; sampled
    inequalities record ``1 + residual / scale`` per sample. The report passes
    when every margin is at most ``1 + slack``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: StabilityKind
    stage: str = ""
    slack: float = Field(ge=0.0)
    slack_budget: dict[str, float] = Field(default_factory=dict)
    margins: list[float] = Field(default_factory=list)
    residuals: list[float] = Field(default_factory=list)
    skipped: int = Field(default=0, ge=0)
    witness: list[float] = Field(default_factory=list)
    passed: bool

    @classmethod
    def from_margins(
        cls,
        kind: StabilityKind,
        margins: Iterable[float],
        slack: float,
        *,
        residuals: Iterable[float] = (),
        witnesses: Iterable[Iterable[float]] = (),
        skipped: int = 0,
        stage: str = "",
        budget: dict[str, float] | None = None,
    ) -> "VerificationReport":
        """Build a report; the witness is the sample with the largest margin."""
        margins = [float(m) for m in margins]
        points = [list(map(float, w)) for w in witnesses]
        witness: list[float] = []
        if margins and points:
            worst = int(np.argmax(np.nan_to_num(margins, nan=np.inf)))
            witness = points[worst]
        return cls(
            kind=kind,
            stage=stage,
            slack=slack,
            slack_budget=budget or {},
            margins=margins,
            residuals=[float(r) for r in residuals],
            skipped=skipped,
            witness=witness,
            passed=all(m <= 1.0 + slack for m in margins),
        )

    @property
    def worst_margin(self) -> float:
        """Largest margin, NaN counting as infinite; 0 when nothing was checked."""
        return max((math.inf if math.isnan(m) else m for m in self.margins), default=0.0)

    @property
    def worst_residual(self) -> float:
        """Largest residual; ``-inf`` when none was recorded."""
        return max(self.residuals, default=-math.inf)

    def headline(self) -> str:
        """One line such as ``UGES: PASS (worst margin 1.000000)``."""
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.kind.value}: {verdict} (worst margin {self.worst_margin:.6f})"


class VerificationSummary(BaseModel):
    """Reports of one run; merging concatenates in order."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    reports: list[VerificationReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Whether every report passed."""
        return all(report.passed for report in self.reports)

    def merge(self, other: "VerificationSummary") -> "VerificationSummary":
        """Concatenate two summaries."""
        return VerificationSummary(reports=[*self.reports, *other.reports])

    @classmethod
    def of(cls, *reports: VerificationReport) -> "VerificationSummary":
        """Bundle reports."""
        return cls(reports=list(reports))
