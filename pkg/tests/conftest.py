import pytest

from veritas.pipeline import Pipeline

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def pipe():
    return Pipeline()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
