import pytest

from downposet.downmaps import EndoMap
from downposet.fixtures import chain, fig1, fig2_v


def emap(p, **images):
    return EndoMap.from_dict(p, images)


@pytest.fixture
def f1():
    return fig1()


@pytest.fixture
def vee():
    return fig2_v()


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def f_t(f1):
    # intersect with {1}
    return EndoMap.from_dict(f1, {"c": "c", "d": "d", "e": "c", "f": "d", "g": "d"})


@pytest.fixture
def f_u(f1):
    # intersect with {2}
    return EndoMap.from_dict(f1, {"c": "c", "d": "c", "e": "e", "f": "e", "g": "e"})


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
