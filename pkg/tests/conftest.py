import pytest
from hypothesis import settings

from seshadri_ruled.lattice import make_surface

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def f1():
    """The first Hirzebruch surface."""
    return make_surface(0, 1, False)


@pytest.fixture
def elliptic_product():
    return make_surface(1, 0, True)


@pytest.fixture
def genus2_e_minus1():
    return make_surface(2, -1, False)
