"""
Configuration module for quintessa.
Handles environment settings, the oracle location and logging setup.
"""

import logging
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseSettings):
    """Runtime settings read from QUINTESSA_* environment variables or a .env file."""

    model_config = SettingsConfigDict(env_prefix="QUINTESSA_", env_file=".env", extra="ignore")

    oracle_cache: Path = Field(
        default_factory=lambda: Path.home() / ".cache" / "quintessa" / "oracle_cache.tsv"
    )
    oracle_command: Optional[str] = None
    oracle_timeout: float = Field(default=600.0, gt=0)
    workers: int = Field(default=4, ge=1)
    debug_mode: bool = False
    verbose: bool = False

    @property
    def debug_enabled(self) -> bool:
        return self.debug_mode or self.verbose


def get_settings() -> Settings:
    """Build settings from the current environment."""
    return Settings()


def configure_logging(settings: Optional[Settings] = None, quiet: bool = False) -> None:
    """
    Configure root logging.

    Args:
        settings: Settings to read the debug flags from; read from the environment if omitted.
        quiet: Use WARNING instead of INFO as the non-debug level (the CLI does this).
    """
    settings = settings or get_settings()
    if settings.debug_enabled:
        level = logging.DEBUG
    else:
        level = logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
    if settings.debug_enabled:
        logger.debug("Debug logging enabled")
        logger.debug(f"   ORACLE_COMMAND: {settings.oracle_command or 'Not set'}")
        logger.debug(f"   ORACLE_CACHE: {settings.oracle_cache}")
        logger.debug(f"   ORACLE_TIMEOUT: {settings.oracle_timeout}")
        logger.debug(f"   WORKERS: {settings.workers}")
