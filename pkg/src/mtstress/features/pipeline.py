"""Turn labeled recordings into a windowed feature dataset."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from mtstress.features.dataset import (
    N_FEATURES,
    FeatureError,
    SubjectWindows,
    WindowedDataset,
)
from mtstress.features.extraction import extract_features
from mtstress.features.windows import DEFAULT_STEP_S, DEFAULT_WINDOW_S, slide_windows

if TYPE_CHECKING:
    from collections.abc import Mapping

    from mtstress.dataset.pipeline import LabeledRecording

logger = logging.getLogger(__name__)


class NoWindowsError(FeatureError):
    """Raised when a subject yields no labeled window."""


@dataclass(frozen=True)
class WindowCounts:
    """How many windows a subject kept and why others were dropped."""

    kept: int
    baseline: int
    stress: int
    dropped_tie: int
    dropped_unlabeled: int


@dataclass
class FeaturizeResult:
    """Outcome of featurizing a set of subjects."""

    dataset: WindowedDataset
    counts: dict[str, WindowCounts] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)


def featurize_subject(
    labeled: LabeledRecording,
    window_len_s: float = DEFAULT_WINDOW_S,
    step_s: float = DEFAULT_STEP_S,
) -> tuple[SubjectWindows, WindowCounts]:
    """Window one recording and extract the 16 features of every kept window.

    Raises
    ------
    NoWindowsError
        If no window carries a label.

    """
    rec = labeled.recording
    windows = slide_windows(rec, labeled.spans, window_len_s, step_s)
    kept = [w for w in windows if w.label is not None]
    if not kept:
        msg = f"Subject {rec.subject_id} has no labeled window"
        raise NoWindowsError(msg)

    X = np.array([extract_features(w.hr, w.sc, rec.sample_rate_hz) for w in kept])
    y = np.array([w.label for w in kept], dtype=int)
    starts = np.array([w.start_s for w in kept])
    counts = WindowCounts(
        kept=len(kept),
        baseline=int(np.count_nonzero(y == 0)),
        stress=int(np.count_nonzero(y == 1)),
        dropped_tie=sum(w.drop_reason == "tie" for w in windows),
        dropped_unlabeled=sum(w.drop_reason == "unlabeled" for w in windows),
    )
    return SubjectWindows(X=X.reshape(-1, N_FEATURES), y=y, starts=starts), counts


def featurize_dataset(
    subjects: Mapping[str, LabeledRecording],
    window_len_s: float = DEFAULT_WINDOW_S,
    step_s: float = DEFAULT_STEP_S,
    jobs: int = 1,
) -> FeaturizeResult:
    """Featurize every subject, collecting failures instead of stopping at one."""

    def _run(labeled: LabeledRecording) -> tuple[SubjectWindows, WindowCounts] | Exception:
        try:
            return featurize_subject(labeled, window_len_s, step_s)
        except FeatureError as e:
            return e

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(_run, subjects.values()))

    windows: dict[str, SubjectWindows] = {}
    result = FeaturizeResult(
        dataset=WindowedDataset(window_len_s=window_len_s, step_s=step_s)
    )
    for sid, outcome in zip(subjects, results, strict=True):
        if isinstance(outcome, Exception):
            logger.warning("Skipping subject %s: %s", sid, outcome)
            result.failures[sid] = str(outcome)
            continue
        windows[sid], result.counts[sid] = outcome
        counts = result.counts[sid]
        if counts.dropped_tie:
            logger.warning("Subject %s: dropped %d tie windows", sid, counts.dropped_tie)
        logger.info(
            "Subject %s: %d windows (%d baseline, %d stress)",
            sid,
            counts.kept,
            counts.baseline,
            counts.stress,
        )
    result.dataset = result.dataset.replace_subjects(windows)
    return result
