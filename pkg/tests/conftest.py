"""
PyTest configuration and shared fixtures.
"""
import shutil
import tempfile
from pathlib import Path

import pytest

from tlfree_core.config import reset_config
from tlfree_core.planar import build_T
from tlfree_core.probability import named_law

TLFREE_ENV = (
    "TLFREE_MAX_NC",
    "TLFREE_MAX_DEPTH",
    "TLFREE_MAX_T_DEGREE",
    "TLFREE_MAX_JW",
    "TLFREE_DELTA",
)


@pytest.fixture(scope="session")
def temp_dir():
    """Create a temporary directory for tests."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture(scope="session")
def output_dir(temp_dir):
    """Create a temporary output directory."""
    output_dir = Path(temp_dir) / "output"
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Every test starts from config.yaml with no TLFREE_* overrides."""
    for name in TLFREE_ENV:
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture(scope="session")
def semicircle_T():
    """T-series of the semicircle law to depth 8."""
    return build_T(named_law("semicircle", 8), 8)


@pytest.fixture(scope="session")
def poisson_T():
    """T-series of the free Poisson law to depth 8."""
    return build_T(named_law("free-poisson", 8), 8)
