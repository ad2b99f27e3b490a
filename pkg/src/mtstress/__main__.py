"""Entry point for ``python -m mtstress``."""

from mtstress.cli.app import run

run()
