from importlib import resources

import pytest

from holosol.parsing import ParseContext, parse_operator, read_problem

ACCEPTANCE_LINES: list[str] = []


def f2_path():
    return resources.files("holosol") / "data" / "appell_f2.toml"


@pytest.fixture(scope="session")
def f2():
    return read_problem(f2_path())


@pytest.fixture
def P():
    """parse_operator with default variable names for n variables."""

    def parse(text, n=2):
        return parse_operator(text, ParseContext.default(n))

    return parse


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
