import pytest

from galerob.degreeset import DegreeSet
from galerob.quiver import GRParams

SOMOS4 = GRParams(1, 2, 4)
SOMOS5 = GRParams(1, 2, 5)

# Somos-4, fourth image of the simple representation at vertex 2
THETA4_SIMPLE2 = DegreeSet(
    SOMOS4,
    -1,
    frozenset([
        (0, 0, 0, 0),
        (0, 0, -1, 0), (0, 0, 0, -1),
        (1, 0, -1, 0), (1, 0, 0, -1), (0, 1, 0, 0),
    ]),
)

# the simple representation at vertex 2, placed so that its orbit lands on THETA4_SIMPLE2
SIMPLE2 = DegreeSet(SOMOS4, -5, frozenset([(0, -1, 0, 0)]))


@pytest.fixture
def somos4():
    return SOMOS4


@pytest.fixture
def somos5():
    return SOMOS5


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
