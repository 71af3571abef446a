from functools import lru_cache

import pytest

from jts_envelope.envelope import build, matrix_units


@lru_cache(maxsize=None)
def envelope(p, q):
    return build(p, q)


@lru_cache(maxsize=None)
def units_for(p, q):
    return matrix_units(envelope(p, q))


@pytest.fixture(scope="session")
def ctx23():
    return envelope(2, 3)


@pytest.fixture(scope="session")
def ctx32():
    return envelope(3, 2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
