"""Entry point for running mtstress from a source checkout."""

from mtstress.cli.app import run

if __name__ == "__main__":
    run()
