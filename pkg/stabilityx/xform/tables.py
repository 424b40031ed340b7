"""CSV tables of coordinate changes."""

import numpy as np

from stabilityx.systems.models import CSV_DIGITS
from stabilityx.types import Matrix

from .change import CoordinateChange
from .inputs import InputChange


def change_table(change: CoordinateChange, states: Matrix) -> str:
    """Render ``T`` on ``states`` as CSV with header ``x1..xn,y1..yn``."""
    states = np.asarray(states, dtype=np.float64).reshape(-1, change.dim)
    header = [*(f"x{i + 1}" for i in range(change.dim)), *(f"y{i + 1}" for i in range(change.dim))]
    lines = [",".join(header)]
    for x in states:
        y = change.forward(x)
        lines.append(",".join(f"{v:.{CSV_DIGITS}g}" for v in (*x, *y)))
    return "\n".join(lines) + "\n"


def input_table(inputs: InputChange, values: Matrix) -> str:
    """Render ``R`` on disturbance ``values`` as CSV with header ``d1..dm,v1..vm``."""
    values = np.asarray(values, dtype=np.float64)
    dim = values.shape[1]
    header = [*(f"d{i + 1}" for i in range(dim)), *(f"v{i + 1}" for i in range(dim))]
    lines = [",".join(header)]
    for d in values:
        v = inputs.forward(d)
        lines.append(",".join(f"{u:.{CSV_DIGITS}g}" for u in (*d, *v)))
    return "\n".join(lines) + "\n"
