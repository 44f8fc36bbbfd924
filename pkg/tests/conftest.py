import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qdunkl.frqdt2d import TransformSpec
from qdunkl.quadrature import Grid2D

settings.register_profile(
    "qdunkl", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qdunkl")

THETA = (math.pi / 3, 2 * math.pi / 5)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def grid():
    return Grid2D.build(0.5, 1.0, 48)


@pytest.fixture(scope="session")
def spec():
    return TransformSpec(0.5, 1.0, *THETA)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda s: int(s[1:])):
        terminalreporter.write_line(mod.RESULTS[key])
