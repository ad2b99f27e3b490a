"""Logging configuration of the command-line entry point."""

import logging.config

from mtstress.settings import settings


def log_config(level: str | None = None) -> dict:
    """``logging.config.dictConfig`` schema sending ``mtstress`` records to stderr."""
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {
                "format": "%(asctime)s - %(levelname)s - %(name)s - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
        },
        "handlers": {
            "default": {
                "formatter": "default",
                "class": "logging.StreamHandler",
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            "mtstress": {
                "handlers": ["default"],
                "level": (level or settings.log_level).upper(),
            },
        },
    }


def configure_logging(level: str | None = None) -> None:
    """Install the log configuration; ``level`` defaults to MTSTRESS_LOG_LEVEL."""
    logging.config.dictConfig(log_config(level))
