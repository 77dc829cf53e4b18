"""Pytest configuration and fixtures"""

import pytest

from core.config import SLOW_TESTS
from core.pipeline import solve_cached
from schemas.models import RunConfig

# Low enough for fast runs, high enough for every known expansion
TEST_ORDER = 5


def pytest_collection_modifyitems(config, items):
    """Skips the high-order runs unless POTTS_SLOW_TESTS=true"""
    if SLOW_TESTS:
        return
    skip_slow = pytest.mark.skip(reason="set POTTS_SLOW_TESTS=true to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def maps_state():
    """Generic planar-maps state solved through t^5"""
    return solve_cached("maps", TEST_ORDER)


@pytest.fixture(scope="session")
def triangulations_state():
    """Generic triangulations state solved through w^5"""
    return solve_cached("triangulations", TEST_ORDER)


@pytest.fixture
def maps_config():
    """Run configuration matching maps_state"""
    return RunConfig(model="maps", order=TEST_ORDER, max_edges=3)


@pytest.fixture
def triangulations_config():
    """Run configuration matching triangulations_state"""
    return RunConfig(model="triangulations", order=TEST_ORDER, max_edges=3)


@pytest.fixture
def fixture_data():
    """Decoded content of a small equation fixture"""
    return {
        "name": "tutte_t2",
        "description": "Properly q-coloured near-triangulations of outer degree 2",
        "size_var": "w",
        "series": {"S": "T_2 at nu = 0"},
        "placeholders": {"X": ["S", 0], "Y": ["S", 1], "Z": ["S", 2]},
        "aliases": [],
        "order": 2,
        "degree": 2,
        "terms": [6],
        "polynomial": "2*(1-q)*w + (w + 10*X - 6*w*Y)*Z + (4-q)*(20*X - 18*w*Y + 9*w^2*Z)",
    }
