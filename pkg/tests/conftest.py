"""Shared fixtures.  The E7 box scans are the only expensive inputs the
suite needs, so they are computed once per session and reused."""

import pytest

from arrangekit.ball import HermSpace, cusp_scan
from arrangekit.cyclo import CycRat
from arrangekit.lattices import enumerate_by_norm, gram_matrix
from arrangekit.presets import dynkin_graph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def e7_gram():
    return gram_matrix(dynkin_graph("E7"), 4)


@pytest.fixture(scope="session")
def e7_roots(e7_gram):
    return enumerate_by_norm(e7_gram, 2, 1)


@pytest.fixture(scope="session")
def e7_cusps(e7_gram):
    return cusp_scan(e7_gram, 1)


@pytest.fixture(scope="session")
def e7_space(e7_gram):
    return HermSpace.from_gram(e7_gram)


@pytest.fixture(scope="session")
def model13():
    """Hyperbolic pair plus two negative directions over Q(zeta_4)."""

    def c(a, b=0):
        return CycRat(a, b, 4)

    gram = [
        [c(1), c(0), c(0), c(0)],
        [c(0), c(-1), c(0), c(0)],
        [c(0), c(0), c(-1), c(0)],
        [c(0), c(0), c(0), c(-1)],
    ]
    return HermSpace(gram)
