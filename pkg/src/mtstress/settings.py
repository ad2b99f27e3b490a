"""Process-wide settings loaded from environment variables."""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process configuration.

    All settings can be overridden via environment variables prefixed with MTSTRESS_.
    For example, MTSTRESS_JOBS=4 lets per-subject and per-fold work use four threads.
    """

    model_config = SettingsConfigDict(env_prefix="MTSTRESS_")

    log_level: str = "INFO"
    jobs: int = 1
    run_dir: str = "runs/default"
    report_formats: str = "json,csv,md"

    @property
    def run_path(self) -> Path:
        """Default run directory as a path."""
        return Path(self.run_dir)


settings = Settings()
