"""Simulation and disturbance-signal configuration settings."""

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class SimulationConfig(BaseModel):
    """Integrator settings shared by every simulation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    report_points: int = Field(
        default=201,
        ge=200,
        description="Uniform report times on [0, t_end], endpoints included",
    )
    blowup_norm: float = Field(
        default=1e12,
        gt=0.0,
        description="State norm treated as finite escape",
    )
    pin_norm: float = Field(
        default=1e-12,
        ge=0.0,
        description="Below this norm an equilibrium at the origin captures the state",
    )
    atol: float = Field(
        default=1e-14,
        gt=0.0,
        description="Absolute error target of the integrator",
    )


class SignalSpec(BaseModel):
    """Recipe for a seeded piecewise-constant disturbance."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    dim: int = Field(default=1, ge=0, description="Disturbance dimension m")
    amplitude: float = Field(default=1.0, ge=0.0, description="Radius of the value ball")
    mean_dwell: float = Field(default=1.0, gt=0.0, description="Mean time between switches")
    horizon: float = Field(default=10.0, gt=0.0, description="Switches are drawn on [0, horizon)")
