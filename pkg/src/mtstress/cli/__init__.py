"""Command-line interface: synth, featurize, train, evaluate and pipeline."""

from mtstress.cli.app import build_parser, main, parse_config
from mtstress.cli.schemas import RunConfig

__all__ = ["RunConfig", "build_parser", "main", "parse_config"]
