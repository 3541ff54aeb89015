"""
Shared fixtures for the arena test suite
"""

import numpy as np
import pytest

from games import load_level
from grid_core import default_catalog
from neural import ArcaneNet, NetConfig


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale learning tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def golddigger_level(catalog):
    return load_level("golddigger-0", catalog=catalog)


@pytest.fixture(scope="session")
def treasurekeeper_level(catalog):
    return load_level("treasurekeeper-0", catalog=catalog)


@pytest.fixture(scope="session")
def waterpuzzle_level(catalog):
    return load_level("waterpuzzle-0", catalog=catalog)


@pytest.fixture
def small_net_config():
    """Reduced ArcaneNet: 7x9 global view, narrow layers, six actions"""
    return NetConfig(
        global_shape=(7, 9),
        n_actions=6,
        conv_global=[4, 3],
        conv_local=[3],
        proj=8,
        global_only_proj=8,
        hidden=5,
        seed=7,
    )


@pytest.fixture
def small_net(small_net_config):
    return ArcaneNet(small_net_config)
