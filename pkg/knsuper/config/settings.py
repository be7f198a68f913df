"""
Environment-backed defaults for the knsuper command line and library logging.

Values are read from ``KNSUPER_*`` environment variables and from an optional
``.env`` file in the working directory. Command-line options take precedence.
"""
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="KNSUPER_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    points: Literal[2, 3] = 3
    window: int = Field(default=4, ge=1)
    format: Literal["json", "csv", "pretty"] = "json"
    seed: int = 0
    samples: int = Field(default=200, ge=1)

    log_dir: str = "log"
    log_level: str = "INFO"
    metrics_file: Optional[str] = None


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
