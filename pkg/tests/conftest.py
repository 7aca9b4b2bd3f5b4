import pytest

from synsem import Sort, builtin


@pytest.fixture(scope="session")
def ulc():
    return builtin("ulc")


@pytest.fixture(scope="session")
def pcf():
    return builtin("pcf")


@pytest.fixture(scope="session")
def pcf2ulc():
    return builtin("pcf2ulc")


STAR = Sort("*")
NAT = Sort("nat")
BOOL = Sort("bool")


def arr(a, b):
    return Sort("arr", (a, b))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
