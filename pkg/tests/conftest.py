import numpy as np
import pytest

from lqca import catalog

ACCEPTANCE_LINES = []


@pytest.fixture
def qflip():
    return catalog.qflip()


@pytest.fixture
def xor():
    return catalog.xor()


@pytest.fixture
def xor_prime():
    return catalog.xor_prime()


@pytest.fixture
def sample():
    return catalog.sample_rule()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
