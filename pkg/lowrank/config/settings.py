from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from lowrank.linalg.jacobi import DEFAULT_MAX_SWEEPS, DEFAULT_RANK_TOL, DEFAULT_SWEEP_TOL


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LOWRANK_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # SVD
    rank_tol: float = Field(DEFAULT_RANK_TOL, gt=0, lt=1)
    svd_tol: float = Field(DEFAULT_SWEEP_TOL, gt=0)
    svd_max_sweeps: int = Field(DEFAULT_MAX_SWEEPS, ge=1)
    svd_backend: Literal["auto", "jacobi", "lapack"] = "auto"

    # Oracle / Monte-Carlo
    enumerate_limit: int = Field(24, ge=1)
    confidence_sigmas: float = Field(4.0, gt=0)
    chunk_size: int = Field(1024, ge=1)
    threads: int = Field(1, ge=1)

    # Storage
    output_dir: Path = Path("./out")

    # Logging
    log_level: str = "INFO"
    show_progress: bool = True

    def svd_options(self) -> dict:
        """Keyword arguments for ``lowrank.linalg.svd``."""
        return {
            "rank_tol": self.rank_tol,
            "tol": self.svd_tol,
            "max_sweeps": self.svd_max_sweeps,
            "backend": self.svd_backend,
        }


def get_settings() -> Settings:
    """Factory that creates a Settings instance. Can be overridden in tests."""
    return Settings()
