import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from bipartite_maps import MapEngine  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("BIPMAPS_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow or BIPMAPS_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def engine() -> MapEngine:
    return MapEngine(N=12, n=6, K=4, workers=1)


@pytest.fixture(scope="session")
def coords(engine):
    return engine.coords


@pytest.fixture(scope="session")
def family(engine):
    return engine.family(2)


@pytest.fixture(scope="session")
def census_tables(engine):
    return {n: engine.census(n) for n in range(1, 7)}
