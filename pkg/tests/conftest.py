import math

import pytest

from gaugeflux import QuadratureSpec

SQRT3 = math.sqrt(3.0)


@pytest.fixture(scope="session")
def spec16():
    """Panel count suited to the piecewise-polynomial catalog fields."""
    return QuadratureSpec(panels=16)


@pytest.fixture(scope="session")
def spec8():
    return QuadratureSpec(panels=8)
