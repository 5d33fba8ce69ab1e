from fractions import Fraction

import pytest

from poolgame.cost_model import OperatorLinearCost
from poolgame.equilibrium import Instance
from poolgame.resource_model import new_universe
from poolgame.reward_model import Linear


@pytest.fixture
def worked_universe():
    return new_universe(["1/2", "1/4", "1/4"])


@pytest.fixture
def worked_cost():
    return OperatorLinearCost((5, 3, 4), (1, 2, 1))


@pytest.fixture
def worked_instance(worked_universe, worked_cost):
    return Instance(worked_universe, worked_cost, Linear(10))


@pytest.fixture
def counter_instance():
    """Two equal owners where the cheap one is better off alone."""
    return Instance(new_universe(["1/2", "1/2"]), OperatorLinearCost((1, 1), (0, 5)), Linear(8))


ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        label = marker.args[0]
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            label += f" [{callspec.id}]"
        ACCEPTANCE_RESULTS.append((label, report.passed))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
