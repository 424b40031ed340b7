import math

import pytest

from stabilityx.kfun import OutOfRangeError
from stabilityx.kfun import invert


def test_invert_square() -> None:
    assert invert(lambda s: s * s, 4.0) == pytest.approx(2.0, rel=1e-10)


def test_invert_identity() -> None:
    assert invert(lambda s: s, 0.3) == pytest.approx(0.3, rel=1e-10)


def test_invert_zero_is_zero() -> None:
    assert invert(lambda s: s**3, 0.0) == 0.0


def test_invert_logarithmic_map_with_polish() -> None:
    def f(a: float) -> float:
        return math.log1p(a * a) / math.pi

    def df(a: float) -> float:
        return 2.0 * a / (math.pi * (1.0 + a * a))

    assert invert(f, 0.2206356, derivative=df) == pytest.approx(1.0, abs=1e-6)


def test_invert_far_outside_unit_bracket() -> None:
    assert invert(lambda s: s, 1e6) == pytest.approx(1e6, rel=1e-10)


def test_invert_rejects_negative_values() -> None:
    with pytest.raises(OutOfRangeError):
        invert(lambda s: s, -1.0)


def test_invert_bounded_map_cannot_bracket() -> None:
    with pytest.raises(OutOfRangeError, match="No bracket"):
        invert(lambda s: s / (1.0 + s), 2.0)
