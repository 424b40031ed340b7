"""Pipeline configuration settings."""

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from stabilityx.kfun import QuadratureConfig
from stabilityx.lyap import GradientFlowConfig


class PipelineOptions(BaseModel):
    """Tunables shared by the construction pipelines."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    c: float = Field(default=1.0, gt=0.0, description="Reference level of the quotient map")
    decay_rate: float = Field(default=1.0, gt=0.0, description="Rate lambda the transformed system is checked at")
    overshoot: float = Field(default=1.0, ge=1.0, description="Constant c the transformed system is checked at")
    tol: float = Field(default=1e-8, gt=0.0, description="Relative integration tolerance")
    slack: float = Field(default=1e-3, ge=0.0, description="Verification slack")
    seed: int = Field(default=0, ge=0, description="Seed of the first disturbance signal")
    n_signals: int = Field(default=100, ge=1, description="Seeded signals (and initial states) per trajectory check")
    n_hinf_signals: int = Field(default=50, ge=1, description="Seeded signals of the integral-estimate check")
    t_end: float = Field(default=10.0, gt=0.0, description="Simulation horizon")
    report_points: int = Field(default=201, ge=200, description="Report times per trajectory")
    hinf_report_points: int = Field(default=1001, ge=200, description="Report times of integral-estimate trajectories")
    y0_min: float = Field(default=1e-3, gt=0.0, description="Smallest initial norm in transformed coordinates")
    y0_max: float = Field(default=1e3, gt=0.0, description="Largest initial norm in transformed coordinates")
    amplitude_max: float = Field(default=1.0, ge=0.0, description="Largest signal amplitude")
    mean_dwell: float = Field(default=1.0, gt=0.0, description="Mean dwell time of the signals")
    contraction_samples: int = Field(default=500, ge=1, description="(y, d) samples of the contraction check")
    gain_samples: int = Field(default=2000, ge=1, description="Samples of the gain-decay and dissipation checks")
    deviation_samples: int = Field(default=20, ge=1, description="Samples of the normal-form deviation check")
    deviation_tol: float = Field(default=1e-5, gt=0.0, description="Relative deviation allowed from y' = -y")
    sample_r_min: float = Field(default=1e-3, gt=0.0, description="Smallest sampled state norm")
    sample_r_max: float = Field(default=1e3, gt=0.0, description="Largest sampled state norm")
    level_s_min: float = Field(default=1e-6, gt=0.0, description="Smallest level of the Jacobian-bound grid")
    level_s_max: float = Field(default=1e3, gt=0.0, description="Largest level of the Jacobian-bound grid")
    level_per_decade: int = Field(default=4, ge=1, description="Jacobian-bound levels per decade")
    level_samples: int = Field(default=16, ge=1, description="Points per level set of the Jacobian bound")
    delta_r_min: float = Field(default=1e-6, gt=0.0, description="Smallest sphere radius of the inverse-norm envelope")
    delta_r_max: float = Field(default=1e6, gt=0.0, description="Largest sphere radius of the inverse-norm envelope")
    delta_radii: int = Field(default=64, ge=2, description="Spheres sampled for the inverse-norm envelope")
    delta_directions: int = Field(default=16, ge=1, description="Directions per sphere of the inverse-norm envelope")
    sup_states: int = Field(default=4096, ge=1, description="Samples per radius of the input supremum")
    sup_radii: int = Field(default=64, ge=2, description="Radii of the input supremum")
    sup_r_min: float = Field(default=1e-3, gt=0.0, description="Smallest disturbance radius of the input supremum")
    sup_r_max: float = Field(default=1e1, gt=0.0, description="Largest disturbance radius of the input supremum")
    commutation_trajectories: int = Field(default=2, ge=0, description="Trajectories of the commutation check")
    commutation_t_end: float = Field(default=1.0, gt=0.0, description="Horizon of the commutation check")
    commutation_tol: float = Field(default=1e-4, gt=0.0, description="Relative error allowed by the commutation check")
    max_workers: int | None = Field(default=None, ge=1, description="Threads for trajectory batches")
    flow: GradientFlowConfig = Field(default_factory=GradientFlowConfig, description="Gradient-flow settings")
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig, description="Quadrature settings")
