"""Type definitions and type aliases for StabilityX."""

from collections.abc import Callable

import numpy as np
import numpy.typing as npt

# States, disturbance values and gradients are flat float64 vectors
Vector = npt.NDArray[np.float64]
Matrix = npt.NDArray[np.float64]

ScalarMap = Callable[[float], float]
StateMap = Callable[[Vector], Vector]
StateFunctional = Callable[[Vector], float]
VectorField = Callable[[Vector, Vector], Vector]

# States below this norm are identified with the origin by every map
ORIGIN_FLOOR = 1e-12


def as_vector(value: object) -> Vector:
    """Coerce a scalar or sequence to a flat float64 vector."""
    return np.atleast_1d(np.asarray(value, dtype=np.float64)).reshape(-1)
