"""Helper utilities for integration tests."""

from pathlib import Path

from mtstress.cli import main

# A small dataset: 3 subjects, four 150 s segments each
SMALL_DATA = ["--subjects", "3", "--duration", "600", "--segment", "150"]
QUICK_TRAINING = ["--max-epochs", "3", "--patience", "2"]


def run_cli(run_dir: Path, command: str, *argv: str) -> int:
    """Run one mtstress subcommand against ``run_dir`` and return its exit code."""
    return main([command, "--run-dir", str(run_dir), *argv])
