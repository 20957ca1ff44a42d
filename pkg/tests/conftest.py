import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pendulum_topology.complexes import pendulum_configuration_complex  # noqa: E402
from pendulum_topology.mechanics import PendulumParams  # noqa: E402


@pytest.fixture(scope="session")
def unit():
    return PendulumParams()


@pytest.fixture(scope="session")
def Q0(unit):
    return pendulum_configuration_complex(unit, level=0)


@pytest.fixture(scope="session")
def Q1(unit):
    return pendulum_configuration_complex(unit, level=1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
