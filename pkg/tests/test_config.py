from pathlib import Path

import pytest
from pydantic import ValidationError

from lowrank.config.settings import Settings


def test_default_settings(monkeypatch):
    """Settings load with defaults when no .env file or variables are set."""
    monkeypatch.delenv("LOWRANK_SHOW_PROGRESS", raising=False)
    settings = Settings()
    assert settings.rank_tol == 1e-12
    assert settings.svd_tol == 1e-14
    assert settings.svd_max_sweeps == 60
    assert settings.svd_backend == "auto"
    assert settings.enumerate_limit == 24
    assert settings.confidence_sigmas == 4.0
    assert settings.output_dir == Path("./out")
    assert settings.log_level == "INFO"
    assert settings.show_progress is True


def test_env_prefix(monkeypatch):
    monkeypatch.setenv("LOWRANK_SVD_BACKEND", "lapack")
    monkeypatch.setenv("LOWRANK_THREADS", "4")
    settings = Settings()
    assert settings.svd_backend == "lapack"
    assert settings.threads == 4


def test_svd_options_mirror_fields():
    settings = Settings(rank_tol=1e-9, svd_max_sweeps=10)
    assert settings.svd_options() == {
        "rank_tol": 1e-9,
        "tol": 1e-14,
        "max_sweeps": 10,
        "backend": "auto",
    }


@pytest.mark.parametrize(
    "field, value",
    [("rank_tol", 0.0), ("svd_max_sweeps", 0), ("threads", 0), ("svd_backend", "gpu")],
)
def test_invalid_values_rejected(field, value):
    with pytest.raises(ValidationError):
        Settings(**{field: value})


def test_output_dir_custom(tmp_path):
    settings = Settings(output_dir=tmp_path)
    assert settings.output_dir == tmp_path
