"""Pytest configuration and fixtures."""

import os
import tempfile
from pathlib import Path

import pytest

from srglab.config import Config
from srglab.srg import GraphSpec, build_graph


def _quiet_config() -> Config:
    config = Config()
    config.show_progress = False
    config.use_cache = False
    return config


def _build(family: str, q: int, r: int, eps: int | None, model: str = "standard"):
    return build_graph(GraphSpec(family, q, r, eps, model), _quiet_config())


@pytest.fixture
def temp_output_dir():
    """Create a temporary output directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def test_config(temp_output_dir):
    """Create a test configuration writing into a temp directory."""
    config = _quiet_config()
    config.output_dir = temp_output_dir
    config.ensure_dirs()
    return config


@pytest.fixture(scope="session")
def petersen():
    """no-even2(2, 2, -1), the Petersen graph."""
    return _build("no-even2", 2, 2, -1)


@pytest.fixture(scope="session")
def k33():
    """no-even2(2, 2, +1), K_{3,3}."""
    return _build("no-even2", 2, 2, 1)


@pytest.fixture(scope="session")
def perp3():
    return _build("no-perp", 3, 2, 1)


@pytest.fixture(scope="session")
def perp5():
    return _build("no-perp", 5, 2, 1)


@pytest.fixture(scope="session")
def perp5_minus():
    return _build("no-perp", 5, 2, -1)


@pytest.fixture(scope="session")
def odd3():
    return _build("no-odd", 3, 2, 1)


@pytest.fixture(scope="session")
def odd5():
    return _build("no-odd", 5, 2, 1)


@pytest.fixture(scope="session")
def even3():
    """no-even3(3, 3, +1)."""
    return _build("no-even3", 3, 3, 1)


@pytest.fixture(scope="session")
def nu():
    """nu(2, 3) on 672 vertices; request it from slow tests only."""
    return _build("nu", 2, 3, None)


@pytest.fixture(scope="session")
def perp3_split():
    return _build("no-perp", 3, 2, 1, "split")


@pytest.fixture(scope="session")
def odd5_split():
    return _build("no-odd", 5, 2, 1, "split")


@pytest.fixture(scope="session")
def odd5_minus_split():
    return _build("no-odd", 5, 2, -1, "split")


def pytest_configure(config):
    """Add custom markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow (NU builds, full grid)")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests if SKIP_SLOW_TESTS is set."""
    if os.getenv("SKIP_SLOW_TESTS"):
        skip_slow = pytest.mark.skip(reason="SKIP_SLOW_TESTS is set")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
