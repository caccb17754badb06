import pytest

from redundalloc import Exponential, GumbelCopula, SystemModel
from redundalloc.costs import clear_caches
from redundalloc.examples import load_example


@pytest.fixture(scope="session")
def ex1():
    return load_example("example1")


@pytest.fixture(scope="session")
def ex2():
    return load_example("example2")


@pytest.fixture(scope="session")
def ex3():
    return load_example("example3")


@pytest.fixture(scope="session")
def ex1_structure(ex1):
    return ex1.model.structure


def ex1_model(copula, marginals=None):
    """Example 1 system with another copula (and optionally other marginals)."""
    s = load_example("example1").model.structure
    return SystemModel(s, copula, marginals or [Exponential(0.2), Exponential(0.3)])


@pytest.fixture(scope="session")
def ex1_indep():
    return ex1_model(GumbelCopula(1.0))


@pytest.fixture(autouse=True, scope="module")
def _fresh_caches():
    clear_caches()
    yield


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
