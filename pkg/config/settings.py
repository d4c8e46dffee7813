"""
Application settings for trdiff.

Uses Pydantic Settings for environment-level configuration (paths, logging,
progress output). Run-level physics configuration lives in src.data.schemas.
"""

from pathlib import Path
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment configuration with validation."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TRDIFF_",
        case_sensitive=False,
        extra="ignore"
    )

    # Paths
    output_root: Path = Field(default=Path("runs"), description="Default root for run artifacts")
    logs_dir: Path = Field(default=Path("logs"), description="Application logs directory")

    # Logging
    log_level: str = Field(default="INFO", description="Application log level")
    log_file: str = Field(default="trdiff.log", description="Application log file name")

    # Runtime behaviour
    show_progress: bool = Field(default=True, description="Show a progress bar over physical steps")
    strict: bool = Field(default=False, description="Treat non-converged implicit steps as failures")

    @field_validator("output_root", "logs_dir", mode="before")
    @classmethod
    def ensure_path(cls, v):
        """Convert string to Path if needed."""
        if isinstance(v, str):
            return Path(v)
        return v

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_level(cls, v):
        """Upper-case the log level name."""
        if isinstance(v, str):
            return v.strip().upper()
        return v

    def get_run_path(self, problem: str) -> Path:
        """Get default output directory for a problem."""
        return self.output_root / problem.lower()

    def create_directories(self) -> None:
        """Create necessary directories if they don't exist."""
        self.logs_dir.mkdir(parents=True, exist_ok=True)
        self.output_root.mkdir(parents=True, exist_ok=True)


# Global settings instance
_settings = None


def get_settings() -> Settings:
    """Get global settings instance (singleton pattern)."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
