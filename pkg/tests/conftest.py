import pytest

from k3g2.catalog import load_literature, load_nikulin

_REPORT: dict[int, str] = {}


@pytest.fixture(scope="session")
def nikulin():
    return load_nikulin()


@pytest.fixture(scope="session")
def literature():
    return load_literature()


@pytest.fixture(scope="session")
def criterion_report():
    """Acceptance tests record one summary line per criterion here."""
    return _REPORT


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_REPORT):
        terminalreporter.write_line(_REPORT[n])
