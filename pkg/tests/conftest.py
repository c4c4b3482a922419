import itertools

import pytest

from zforms.fields import resolve_field

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def field():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = resolve_field(name)
        return cache[name]

    return get


def coordinate_window(K, bound):
    """Every element of Z[omega] with coordinates in [-bound, bound]."""
    for c in itertools.product(range(-bound, bound + 1), repeat=K.degree):
        yield K.element(c)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
