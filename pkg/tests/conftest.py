import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from homfinsler.fixtures import FIXTURES, load_fixture
from homfinsler.liealg import orthonormalize

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RS_MAX_B = 0.3  # randers_square fixtures are rescaled below the phi > 0 limit (~0.382)

ACCEPTANCE_LINES = []


def model_for(name, family):
    """Fixture with v shortened to b = 0.3 when the randers_square metric would be invalid."""
    m = load_fixture(name)
    if family == "randers_square" and m.b > 0.38:
        m = m.with_v(np.array(m.v_k) * (RS_MAX_B / m.b))
    return m


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


@pytest.fixture
def solvable2d():
    return load_fixture("solvable2d")


@pytest.fixture
def heisenberg():
    return load_fixture("heisenberg")


@pytest.fixture
def ortho():
    def _ortho(name, family="square"):
        return orthonormalize(model_for(name, family))[0]
    return _ortho


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
