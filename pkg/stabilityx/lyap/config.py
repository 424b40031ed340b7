"""Gradient-flow configuration settings."""

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class GradientFlowConfig(BaseModel):
    """Settings for the normalized gradient flow."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    step_tol: float = Field(
        default=1e-8,
        gt=0.0,
        description="Local error per unit level change",
    )
    v_min: float = Field(
        default=1e-10,
        gt=0.0,
        description="Level floor; states below it are identified with the origin",
    )
    max_steps: int = Field(
        default=20_000,
        ge=1,
        description="Right-hand-side evaluation budget per flow",
    )
