import os
import sys

import pytest

from biso import config as biso_config
from biso import channels_dir

# Check if we're running the slow verification tests
_running_slow = "--runslow" in sys.argv

data_dir_test = os.path.join(os.path.dirname(__file__), "data")

# Smaller grids and searches for the fast test run
if not _running_slow:
    biso_config.grid_n = 257
    biso_config.region_grid_n = 513
    biso_config.frontier_weights = 64
    biso_config.aux_restarts = 24
    biso_config.aux_sweeps = 8


def pytest_configure(config):
    """Applies all top-level pytest configuration."""

    # Allow marking tests that run full-size suites
    config.addinivalue_line("markers", "slow: mark test as a full-size verification")


def pytest_addoption(parser):
    """Adds global options to the pytest commandline."""

    # Option to run the full-size suites. If not specified, they are skipped
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Run full-size verification tests",
    )


def pytest_collection_modifyitems(config, items):
    """Provides the list of tests for pytest to run."""

    if config.getoption("--runslow"):
        return

    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def fixture_path():
    """Path of a channel spec under tests/data/fixtures/channels."""

    def path(name: str) -> str:
        return os.path.join(data_dir_test, "fixtures", "channels", name)

    return path


@pytest.fixture(scope="session")
def bundled_specs():
    """``@name`` handles of every spec shipped under biso/data/channels."""
    return sorted(
        f"@{os.path.splitext(f)[0]}"
        for f in os.listdir(channels_dir)
        if f.endswith(".yaml")
    )
