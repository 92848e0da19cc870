"""Shared fixtures; also prints the acceptance lines in the terminal summary."""

import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--fast", action="store_true", help="smaller random samples in the acceptance suite")


@pytest.fixture(scope="session")
def fast(request) -> bool:
    return request.config.getoption("--fast")


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
