"""
Environment-driven settings.

Values are read from the process environment (optionally seeded from a
.env file) the same way for every entry point; flags on the CLI override
nothing here except where noted.
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseModel):
    log_level: str = "WARNING"
    workers: int = Field(default=1, ge=1)  # threads for replicate loops
    block_rows: int = Field(default=256, ge=1)  # row-block height of the fast grid sweep


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Settings singleton, built on first use."""
    global _settings
    if _settings is None:
        _settings = Settings(
            log_level=os.getenv("LATENTDEP_LOG_LEVEL", "WARNING").upper(),
            workers=int(os.getenv("LATENTDEP_WORKERS", "1")),
            block_rows=int(os.getenv("LATENTDEP_BLOCK_ROWS", "256")),
        )
    return _settings


def configure_logging(level: Optional[str] = None) -> None:
    """Route library logs to stderr. Only the CLI calls this."""
    logging.basicConfig(
        level=(level or get_settings().log_level),
        format=LOG_FORMAT,
    )
