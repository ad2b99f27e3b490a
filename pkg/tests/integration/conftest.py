"""Pytest configuration for integration tests."""

from pathlib import Path

import pytest

from .helpers import SMALL_DATA, run_cli


@pytest.fixture
def run_dir(tmp_path: Path) -> Path:
    """Provide an empty run directory.

    Returns
    -------
    Path
        Directory under the test's temporary path; not created yet
    """
    return tmp_path / "run"


@pytest.fixture
def featurized_run(run_dir: Path) -> Path:
    """Provide a run directory holding a small synthetic dataset and its features.

    Returns
    -------
    Path
        Run directory with ``data/``, ``features.csv`` and ``baseline_stats.json``
    """
    assert run_cli(run_dir, "synth", "--seed", "3", *SMALL_DATA) == 0
    assert run_cli(run_dir, "featurize", "--seed", "3") == 0
    return run_dir


@pytest.fixture
def trained_run(featurized_run: Path) -> Path:
    """Provide a featurized run directory with LR and linear SVM checkpoints.

    Returns
    -------
    Path
        Run directory additionally holding ``split.json`` and ``models/``
    """
    assert run_cli(featurized_run, "train", "--seed", "3", "--model", "lr,svm-l") == 0
    return featurized_run
