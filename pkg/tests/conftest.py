import pytest

from thcarrows.finset import FINSET
from thcarrows.poset import POSET
from thcarrows.thc import cartesian_instance


@pytest.fixture(scope="session")
def inst():
    return cartesian_instance(FINSET)


@pytest.fixture(scope="session")
def pinst():
    return cartesian_instance(POSET)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
