# core/config.py
from typing import *

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    APP_NAME: str = "minorkit"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Budgets
    DEFAULT_BUDGET_MS: int = 60_000
    EXACT_SOLVER_MAX_VERTICES: int = 24
    MINOR_MAX_HOST_VERTICES: int = 16
    LINKED_MAX_TERMINALS: int = 8
    LINKED_SAMPLE_PAIRS: int = 256

    # Sweeps
    ORACLE_MAX_HOST_VERTICES: int = 14
    RECORD_WALL_TIME: bool = False
    SWEEP_WORKERS: int = 1

    # Interchange
    DEFAULT_FORMAT: str = "json"
    EXPORT_DIR: str = "./reports"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="MINORKIT_",
        extra="ignore",
    )


settings = Settings()
