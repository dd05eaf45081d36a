import pytest

from aperiodica.capcore import CapParams, Window
from aperiodica.exactnum import TAU, qsqrt

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if crit:
        number, title = crit
        ok = report.passed and _criteria.get(number, (title, True))[1]
        _criteria[number] = (title, ok)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}")


@pytest.fixture
def ternary():
    """Three-letter configuration over Z[sqrt 2] with a three-gap window."""
    e = -1 / qsqrt(2)
    return CapParams(e, -e), Window(0, -2 - 4 * e)


@pytest.fixture
def fibonacci():
    return CapParams(-1 / TAU, TAU), Window(0, 1)
