"""Seeded piecewise-constant disturbance signals."""

import numpy as np

from .config import SignalSpec
from .models import DisturbanceSignal


def make_disturbance(spec: SignalSpec, seed: int) -> DisturbanceSignal:
    """Draw a reproducible signal from ``spec``.

    Dwell times are exponential with mean ``spec.mean_dwell``; values are
    uniform in the ball of radius ``spec.amplitude``. Amplitude 0 or dimension
    0 gives the zero signal.
    """
    if spec.amplitude == 0.0 or spec.dim == 0:
        return DisturbanceSignal(switch_times=np.empty(0), values=np.zeros((1, spec.dim)), seed=seed)

    rng = np.random.default_rng(seed)
    times: list[float] = []
    t = float(rng.exponential(spec.mean_dwell))
    while t < spec.horizon:
        times.append(t)
        t += float(rng.exponential(spec.mean_dwell))

    count = len(times) + 1
    directions = rng.standard_normal((count, spec.dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = spec.amplitude * rng.random(count) ** (1.0 / spec.dim)
    return DisturbanceSignal(switch_times=np.array(times), values=directions * radii[:, None], seed=seed)
