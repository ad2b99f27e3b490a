"""Unit tests for process settings and seed streams."""

from pathlib import Path

import pytest

from mtstress.cli.logs import log_config
from mtstress.evaluation.report import parse_formats
from mtstress.rng import derive_seed, stream
from mtstress.settings import Settings


class TestSettings:
    """Tests for Settings."""

    def test_defaults(self, monkeypatch: pytest.MonkeyPatch):
        """Test the defaults without environment overrides."""
        for name in ("LOG_LEVEL", "JOBS", "RUN_DIR", "REPORT_FORMATS"):
            monkeypatch.delenv(f"MTSTRESS_{name}", raising=False)

        settings = Settings()

        assert settings.jobs == 1
        assert settings.run_path == Path("runs/default")
        assert parse_formats(settings.report_formats) == ["json", "csv", "md"]

    def test_environment_prefix(self, monkeypatch: pytest.MonkeyPatch):
        """Test that MTSTRESS_ variables override the defaults."""
        monkeypatch.setenv("MTSTRESS_JOBS", "4")
        monkeypatch.setenv("MTSTRESS_REPORT_FORMATS", "md, json")
        monkeypatch.setenv("MTSTRESS_LOG_LEVEL", "debug")

        settings = Settings()

        assert settings.jobs == 4
        assert parse_formats(settings.report_formats) == ["md", "json"]
        assert settings.log_level == "debug"


class TestStreams:
    """Tests for derive_seed and stream functions."""

    def test_same_keys_same_stream(self):
        """Test that a stream is fixed by its seed and keys."""
        assert stream(3, 1, 2).random(4).tolist() == stream(3, 1, 2).random(4).tolist()
        assert derive_seed(3, 4, 0) == derive_seed(3, 4, 0)

    def test_keys_separate_streams(self):
        """Test that different keys or seeds give different streams."""
        assert derive_seed(3, 4, 0) != derive_seed(3, 4, 1)
        assert derive_seed(3, 4, 0) != derive_seed(4, 4, 0)
        assert stream(3, 1).random() != stream(3, 2).random()

    def test_seed_range(self):
        """Test that derived seeds fit in 32 bits."""
        assert 0 <= derive_seed(2**40, 6, 4) < 2**32


class TestLogConfig:
    """Tests for log_config function."""

    def test_explicit_level(self):
        """Test that an explicit level overrides the configured one."""
        config = log_config("debug")

        assert config["loggers"]["mtstress"]["level"] == "DEBUG"
        assert config["handlers"]["default"]["stream"] == "ext://sys.stderr"

    def test_default_level(self, monkeypatch: pytest.MonkeyPatch):
        """Test that the settings level applies when none is given."""
        monkeypatch.setattr("mtstress.cli.logs.settings.log_level", "warning")

        assert log_config()["loggers"]["mtstress"]["level"] == "WARNING"
