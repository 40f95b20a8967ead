import pytest

from radial_mm.bundled import load_example
from radial_mm.graph import rooted_profile
from radial_mm.mmcore import cumulative_distribution

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def left():
    return load_example("sixnode_a")


@pytest.fixture(scope="session")
def right():
    return load_example("sixnode_b")


@pytest.fixture(scope="session")
def f_v1(left):
    return cumulative_distribution(rooted_profile(left, "v1"))


@pytest.fixture(scope="session")
def f_u1(right):
    return cumulative_distribution(rooted_profile(right, "u1"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
