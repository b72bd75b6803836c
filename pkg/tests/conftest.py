import pytest

from helper.perm import GroundSet
from plugins.canon_base import CanonContext


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def ctx():
    """Run context with the invariant checks switched on."""
    with CanonContext(threads=1, debug=True) as c:
        yield c


@pytest.fixture
def abc():
    return GroundSet("abc")
