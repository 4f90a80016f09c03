import pytest
from hypothesis import settings

from flk.algebras import build_small_quantum
from flk.rootdata import build_root_datum
from flk.scalars import make_field

settings.register_profile("flk", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("flk")

_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def F11():
    return make_field(11, 5)


@pytest.fixture(scope="session")
def A1():
    return build_root_datum("A", 1)


@pytest.fixture(scope="session")
def A2():
    return build_root_datum("A", 2)


@pytest.fixture(scope="session")
def u_A1(F11, A1):
    return build_small_quantum(A1, F11, "u")


@pytest.fixture(scope="session")
def g_A1(F11, A1):
    return build_small_quantum(A1, F11, "g")


@pytest.fixture(scope="session")
def u_A2(F11, A2):
    return build_small_quantum(A2, F11, "u")
