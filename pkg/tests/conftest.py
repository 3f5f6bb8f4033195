import pytest

from toromaps.tilings import builtin_specs

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def specs():
    return {s.id: s for s in builtin_specs()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
