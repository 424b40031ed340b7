"""Quadrature configuration settings."""

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class QuadratureConfig(BaseModel):
    """Adaptive quadrature settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    abs_tol: float = Field(
        default=1e-12,
        gt=0.0,
        description="Absolute error target",
    )
    rel_tol: float = Field(
        default=1e-10,
        gt=0.0,
        description="Relative error target",
    )
    max_depth: int = Field(
        default=200,
        ge=1,
        description="Maximum number of adaptive subintervals",
    )

    def refined(self, factor: float = 10.0) -> "QuadratureConfig":
        """Return a copy with both tolerances divided by ``factor``."""
        return self.model_copy(
            update={
                "abs_tol": self.abs_tol / factor,
                "rel_tol": self.rel_tol / factor,
                "max_depth": self.max_depth * 2,
            }
        )
