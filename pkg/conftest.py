import os
import sys

import pytest

# Repo root = this file's directory
REPO_ROOT = os.path.dirname(os.path.abspath(__file__))

# Make the in-tree crossdep package importable without installing it
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run the Monte Carlo acceptance tests",
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
