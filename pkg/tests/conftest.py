import pytest

from wreathblock import cyclic_group, spectral_table, symmetric_group
from wreathblock.group_action import from_generators

ACCEPTANCE_LINES = []


def dihedral4():
    """D_4 on the corners of a square: multiplicity free with a 2-dimensional constituent."""
    return from_generators(4, [[1, 2, 3, 0], [3, 2, 1, 0]])


GROUPS = {
    "S2": lambda: symmetric_group(2),
    "S3": lambda: symmetric_group(3),
    "C3": lambda: cyclic_group(3),
    "D4": dihedral4,
}


@pytest.fixture(params=["S2", "S3", "C3"])
def example_group(request):
    return request.param, GROUPS[request.param]()


@pytest.fixture(params=["S2", "S3", "C3", "D4"])
def any_group(request):
    return request.param, GROUPS[request.param]()


@pytest.fixture(scope="session")
def s2():
    return symmetric_group(2)


@pytest.fixture(scope="session")
def s2_table():
    return spectral_table(symmetric_group(2))


@pytest.fixture(scope="session")
def c3_table():
    return spectral_table(cyclic_group(3))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
