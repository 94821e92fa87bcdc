# src/core/config.py

"""
Core configuration using Pydantic Settings
Numerical tolerances, search budgets and logging options, overridable from the environment.
"""

from contextlib import contextmanager
from functools import lru_cache
from typing import Any, Iterator, Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment-based configuration."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    app_name: str = "choi-channels"
    app_version: str = "0.1.0"
    environment: str = "development" # Options: development, staging, production
    debug: bool = False

    log_level: str = "WARNING"
    log_format: str = "console"

    # lambda_min(M) >= -psd_tolerance * max(1, ||M||_F) accepts M as PSD
    psd_tolerance: float = Field(default=1e-9, gt=0)
    hermiticity_tolerance: float = Field(default=1e-10, gt=0)
    normalization_tolerance: float = Field(default=1e-9, gt=0)
    rank_tolerance: float = Field(default=1e-12, gt=0)

    eigensolver: Literal["lapack", "jacobi"] = "lapack"
    jacobi_max_sweeps: int = Field(default=100, ge=1)
    jacobi_tolerance: float = Field(default=1e-14, gt=0)

    seesaw_restarts: int = Field(default=32, ge=1)
    seesaw_max_iters: int = Field(default=500, ge=1)
    seesaw_tolerance: float = Field(default=1e-9, gt=0)
    seed: int = 0
    workers: int = Field(default=1, ge=1)

    bisection_tolerance: float = Field(default=1e-5, gt=0)
    simplex_grid_step: float = Field(default=0.05, gt=0, le=0.5)
    simplex_diameter: float = Field(default=1e-6, gt=0)

    significant_digits: int = Field(default=9, ge=1, le=17)

    @field_validator("log_format")
    @classmethod
    def check_log_format(cls, value: str) -> str:
        if value not in {"json", "console"}:
            raise ValueError("log_format must be 'json' or 'console'")
        return value

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.environment.lower() == "production"

    @property
    def is_development(self) -> bool:
        """Check if running in development environment."""
        return self.environment.lower() == "development"


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance
    Use lru_cache to avoid reading .env file multiple times
    """
    return Settings()


# Global settings instance
settings = get_settings()


@contextmanager
def override_settings(**values: Any) -> Iterator[Settings]:
    """
    Temporarily set fields of the global settings; None values are skipped.
    Previous values come back on exit, also after an exception.
    """
    previous = {}
    for key, value in values.items():
        if value is None:
            continue
        previous[key] = getattr(settings, key)
        setattr(settings, key, value)
    try:
        yield settings
    finally:
        for key, value in previous.items():
            setattr(settings, key, value)
