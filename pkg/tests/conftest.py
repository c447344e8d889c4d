import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(key, True)
        _CRITERIA[key] = prev and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def torsion():
    from metalie.catalog import torsion_algebra

    return torsion_algebra()


@pytest.fixture(scope="session")
def free3():
    from metalie.free import free_context

    return free_context(3)
