# tests/conftest.py

import os
import tempfile

# Must run before any src import: the config object reads this once.
os.environ["WORKBENCH_CACHE_DIR"] = tempfile.mkdtemp(prefix="workbench-tests-")

import pytest

from src.reports.run_config import RunConfig


@pytest.fixture
def quick_config():
    return RunConfig(quick=True, store_reports=False)
