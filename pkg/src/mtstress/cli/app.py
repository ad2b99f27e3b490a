"""Argument parsing, configuration merge and exit-code mapping of the CLI."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError

from mtstress import __version__
from mtstress.baselines.errors import BaselineError
from mtstress.checkpoint import CheckpointError
from mtstress.cli.commands import COMMANDS
from mtstress.cli.logs import configure_logging
from mtstress.cli.schemas import RunConfig, merge_config
from mtstress.dataset.models import DatasetError
from mtstress.evaluation.errors import (
    ConsistencyError,
    EvaluationError,
    UnsupportedFormatError,
)
from mtstress.features.dataset import FeatureError
from mtstress.nn.errors import NetworkError
from mtstress.synth import SynthError

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_TRAINING = 4
EXIT_CONSISTENCY = 5

# Flag spelling of every config key, for error messages
FLAGS: dict[str, str] = {}


class UsageError(Exception):
    """Raised for a bad ``--config`` file."""


def _add(
    parser: argparse._ActionsContainer, flag: str, dest: str, **kwargs: Any  # noqa: ANN401
) -> None:
    FLAGS[dest] = flag
    parser.add_argument(flag, dest=dest, default=argparse.SUPPRESS, **kwargs)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add(common, "--seed", "seed", type=int, help="master seed of the run")
    _add(common, "--jobs", "jobs", type=int, help="worker threads (default from MTSTRESS_JOBS)")
    _add(common, "--run-dir", "run_dir", help="directory receiving all outputs of the run")
    common.add_argument(
        "--config",
        dest="config_file",
        type=Path,
        default=None,
        help="JSON file with run configuration; flags override it",
    )
    return common


def _synth_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("synthetic data")
    _add(group, "--subjects", "synth.n_subjects", type=int, help="number of subjects")
    _add(group, "--duration", "synth.duration_s", type=float, help="recording length in s")
    _add(group, "--rate", "synth.sample_rate_hz", type=float, help="sample rate in Hz")
    _add(group, "--offset-std", "synth.subject_offset_std", type=float,
         help="spread of resting heart rate across subjects, bpm")
    _add(group, "--hr-delta", "synth.stress_hr_delta", type=float,
         help="heart rate increase under stress, bpm")
    _add(group, "--response-spread", "synth.response_spread", type=float,
         help="spread of individual stress response sizes")
    _add(group, "--hrv-response", "synth.hrv_response", type=float,
         help="largest log change of heart rate variability under stress")
    _add(group, "--sc-shift", "synth.tonic_sc_response_us", type=float,
         help="largest tonic skin conductance shift under stress, uS")
    _add(group, "--noise", "synth.noise_std", type=float, help="heart rate noise, bpm")
    _add(group, "--segment", "synth.segment_s", type=float,
         help="length of baseline and stress segments in s")
    _add(group, "--label-mode", "synth.label_mode", choices=["span-file", "marker-derived"])
    _add(group, "--hr-rate", "synth.hr_sample_rate_hz", type=float,
         help="write heart rate to a separate file at this rate")
    _add(group, "--name", "synth.name", help="dataset name")
    _add(group, "--out", "out", type=Path, help="output directory of the data")


def _featurize_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("features")
    _add(group, "--manifest", "manifest", type=Path, help="dataset manifest JSON")
    _add(group, "--window", "featurize.window_s", type=float, help="window length in s")
    _add(group, "--step", "featurize.step_s", type=float, help="window step in s")


def _features_option(parser: argparse.ArgumentParser) -> None:
    _add(parser, "--features", "features", type=Path, help="feature CSV")


def _model_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("models")
    _add(group, "--model", "models",
         help="comma-separated kinds among lr, svm-l, svm-rbf, st-nn, mt-nn, or 'all'")
    _add(group, "--dataset-name", "dataset_name", help="dataset name for the split")
    _add(group, "--per-subject-baselines", "per_subject_baselines", action="store_true",
         help="train one baseline classifier per subject")
    _add(group, "--lr", "train.lr", type=float, help="network learning rate")
    _add(group, "--batch-size", "train.batch_size", type=int, help="network batch size")
    _add(group, "--max-epochs", "train.max_epochs", type=int, help="network epoch cap")
    _add(group, "--patience", "train.patience", type=int, help="early stopping patience")
    _add(group, "--val-fraction", "train.val_fraction", type=float,
         help="fraction of each subject held out for early stopping")


def _format_option(parser: argparse.ArgumentParser) -> None:
    _add(parser, "--format", "formats", help="comma-separated report formats: json,csv,md")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtstress",
        description="Personalized stress detection from heart rate and skin conductance",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    synth = sub.add_parser("synth", parents=[common], help="generate a synthetic dataset")
    _synth_options(synth)

    featurize = sub.add_parser("featurize", parents=[common], help="extract window features")
    _featurize_options(featurize)
    _features_option(featurize)

    train = sub.add_parser("train", parents=[common], help="select and train models")
    _features_option(train)
    _model_options(train)

    evaluate = sub.add_parser("evaluate", parents=[common], help="score trained models")
    _features_option(evaluate)
    _add(evaluate, "--model", "models", help="comma-separated model kinds to evaluate")
    _format_option(evaluate)

    pipeline = sub.add_parser("pipeline", parents=[common], help="run every stage")
    _synth_options(pipeline)
    _featurize_options(pipeline)
    _features_option(pipeline)
    _model_options(pipeline)
    _format_option(pipeline)
    return parser


def _read_config_file(path: Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        values = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        msg = f"{path} is not valid JSON: {e}"
        raise UsageError(msg) from e
    if not isinstance(values, dict):
        msg = f"{path} must hold a JSON object"
        raise UsageError(msg)
    return values


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse ``argv`` into a validated RunConfig; flags override ``--config`` values."""
    args = vars(build_parser().parse_args(argv))
    file_values = _read_config_file(args.pop("config_file"))
    command = args.pop("command")
    merged = merge_config(file_values, args)
    merged["command"] = command
    return RunConfig.model_validate(merged)


def _describe(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"])
        lines.append(f"{FLAGS.get(key, key)}: {item['msg']}")
    return "; ".join(lines)


def _fail(code: int, message: str) -> int:
    sys.stderr.write(f"mtstress: error: {message}\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Run one CLI invocation and return its exit code.

    Exit codes: 0 success, 2 usage or configuration error, 3 input/output error,
    4 training failure, 5 inconsistent inputs (split, checkpoint or features from
    different runs).
    """
    try:
        cfg = parse_config(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except ValidationError as e:
        return _fail(EXIT_USAGE, _describe(e))
    except UsageError as e:
        return _fail(EXIT_USAGE, str(e))
    except OSError as e:
        return _fail(EXIT_IO, str(e))

    logger.info("Running %s in %s", cfg.command, cfg.run_dir)
    try:
        return COMMANDS[cfg.command](cfg)
    except (ConsistencyError, CheckpointError) as e:
        return _fail(EXIT_CONSISTENCY, str(e))
    except UnsupportedFormatError as e:
        return _fail(EXIT_USAGE, str(e))
    except (NetworkError, BaselineError, EvaluationError) as e:
        return _fail(EXIT_TRAINING, str(e))
    except (OSError, DatasetError, FeatureError, SynthError) as e:
        return _fail(EXIT_IO, str(e))
    except ValidationError as e:
        # Malformed manifest, split or report files
        return _fail(EXIT_IO, str(e))


def run() -> None:
    """Configure logging and run the CLI with the process arguments."""
    configure_logging()
    sys.exit(main(sys.argv[1:]))
