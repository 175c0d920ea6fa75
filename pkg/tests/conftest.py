import numpy as np
import pytest

from lowrank.config.settings import Settings


@pytest.fixture
def tmp_output_dir(tmp_path):
    return tmp_path / "output"


@pytest.fixture
def test_settings(tmp_output_dir):
    """Settings with defaults, a temp output dir and no progress bars."""
    return Settings(output_dir=tmp_output_dir, show_progress=False)


@pytest.fixture(autouse=True)
def _quiet_progress(monkeypatch):
    monkeypatch.setenv("LOWRANK_SHOW_PROGRESS", "false")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
