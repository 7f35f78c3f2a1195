import math

import pytest

from scarf_scatter.scarf_model import from_parametrization

SQRT2, SQRT5 = math.sqrt(2.0), math.sqrt(5.0)

# one line per acceptance criterion, filled by test_acceptance
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fig1a():
    return from_parametrization(0, 0, SQRT2, SQRT5)


@pytest.fixture
def fig1d():
    return from_parametrization(0, 0, SQRT2, -SQRT2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
