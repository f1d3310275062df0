"""
Test configuration fixtures for restrictcat.

This module provides pytest fixtures for testing the restrictcat package,
including logging configuration, search-bound configurations and the
bundled fixture categories, built once per session.
"""
import pytest
from hypothesis import settings

from restrictcat.config import WorkbenchConfig
from restrictcat.fixtures import load_fixture
from restrictcat.logging_config import configure_logging
from restrictcat.mcat import msystem, par
from restrictcat.restriction import make_restriction_category

settings.register_profile("restrictcat", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("restrictcat")


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="Rewrite the files under tests/golden from the current command output",
    )


@pytest.fixture(autouse=True)
def configure_test_logging():
    """Configure logging for all tests."""
    configure_logging()


@pytest.fixture
def test_config():
    """Create a configuration with the default search bounds.

    Returns:
        WorkbenchConfig: Configuration used by the exhaustive checks
    """
    return WorkbenchConfig(seed=20240601, shape_bound=3, max_arrows=4, max_diagrams=5000)


@pytest.fixture
def small_config():
    """Create a configuration with tight bounds for fast unit tests.

    Returns:
        WorkbenchConfig: Configuration with two-object shapes and a small diagram cap
    """
    return WorkbenchConfig(seed=7, shape_bound=2, max_arrows=2, max_diagrams=50, max_summands=2)


@pytest.fixture(scope="session")
def triv3():
    bundle = load_fixture("triv3")
    return make_restriction_category(bundle.category, bundle.restriction, name="triv3")


@pytest.fixture(scope="session")
def max5a():
    bundle = load_fixture("max5a")
    return make_restriction_category(bundle.category, bundle.restriction, name="max5a")


@pytest.fixture(scope="session")
def max5b():
    bundle = load_fixture("max5b")
    return make_restriction_category(bundle.category, bundle.restriction, name="max5b")


@pytest.fixture(scope="session")
def pfin2():
    bundle = load_fixture("pfin2")
    return make_restriction_category(bundle.category, bundle.restriction, name="pfin2")


@pytest.fixture(scope="session")
def inj2():
    """INJ2 as ``(category, M-system)``."""
    bundle = load_fixture("inj2")
    return bundle.category, msystem(bundle.category, bundle.msystem)


@pytest.fixture(scope="session")
def ab2():
    """AB2 as ``(category, M-system)``."""
    bundle = load_fixture("ab2")
    return bundle.category, msystem(bundle.category, bundle.msystem)


@pytest.fixture(scope="session")
def par_inj2(inj2):
    C, M = inj2
    return par(C, M)
