import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .logging import get_logger

logger = get_logger()

DEFAULT_ORACLE_BUDGET = 10**7


class Settings(BaseModel):
    """Runtime configuration; every field can be overridden by a CLI flag."""

    oracle_budget: int = Field(default=DEFAULT_ORACLE_BUDGET, ge=1)
    selftest_seed: int = Field(default=0, ge=0)
    selftest_count: int = Field(default=25, ge=1)
    selftest_max_dim: int = Field(default=4, ge=1)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from ``TRIPOTENT_*`` environment variables.

        Unset variables fall back to the field defaults; malformed values
        raise :class:`pydantic.ValidationError`.
        """
        env = {
            "oracle_budget": os.getenv("TRIPOTENT_ORACLE_BUDGET"),
            "selftest_seed": os.getenv("TRIPOTENT_SEED"),
            "selftest_count": os.getenv("TRIPOTENT_SELFTEST_COUNT"),
            "selftest_max_dim": os.getenv("TRIPOTENT_SELFTEST_MAX_DIM"),
            "log_level": os.getenv("TRIPOTENT_LOG_LEVEL"),
        }
        return cls(**{k: v for k, v in env.items() if v is not None})


def _project_root(start: Path) -> Path:
    for candidate in (start, *start.parents):
        if (candidate / ".env").exists() or (candidate / ".git").exists():
            return candidate
    return start


def load_environment() -> Optional[Path]:
    """Load the nearest ``.env`` at or above the working directory.

    Returns the loaded file, or ``None``. Variables already present in the
    process environment take precedence over the file.
    """
    dotenv_path = _project_root(Path.cwd()) / ".env"
    if not dotenv_path.is_file():
        logger.debug(".env not found; TRIPOTENT_* defaults apply.")
        return None
    load_dotenv(dotenv_path=dotenv_path, override=False)
    return dotenv_path


def get_settings() -> Settings:
    """Load ``.env`` (if any) and return the current settings."""
    load_environment()
    return Settings.from_env()


__all__ = ["Settings", "DEFAULT_ORACLE_BUDGET", "load_environment", "get_settings"]
