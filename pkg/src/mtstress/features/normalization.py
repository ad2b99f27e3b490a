"""Per-subject baseline normalization of window features."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from mtstress.features.dataset import (
    N_FEATURES,
    FeatureError,
    SubjectWindows,
    WindowedDataset,
)

logger = logging.getLogger(__name__)

ZERO_SPREAD = 1e-12

BaselineStats = dict[str, np.ndarray]
"""Per-subject mean of every feature over that subject's baseline (label 0) windows."""


class NoBaselineWindowsError(FeatureError):
    """Raised when a subject has no baseline windows to normalize against."""

    def __init__(self, subject_id: str) -> None:
        self.subject_id = subject_id
        super().__init__(f"Subject {subject_id} has no baseline windows")


class AlreadyNormalizedError(FeatureError):
    """Raised when normalizing a dataset twice."""


def baseline_normalize(ds: WindowedDataset) -> tuple[WindowedDataset, BaselineStats]:
    """Subtract each subject's baseline feature means from all of its windows.

    Only the mean is removed (no scaling), which compensates for individual resting
    levels such as resting heart rate. Labels are unchanged.

    Returns
    -------
    tuple[WindowedDataset, BaselineStats]
        The normalized dataset and the subtracted per-subject means

    Raises
    ------
    AlreadyNormalizedError
        If ``ds.normalized`` is already set.
    NoBaselineWindowsError
        If a subject has no label-0 window.

    """
    if ds.normalized:
        msg = "Dataset is already baseline-normalized"
        raise AlreadyNormalizedError(msg)

    stats: BaselineStats = {}
    subjects: dict[str, SubjectWindows] = {}
    for sid, windows in ds.subjects.items():
        baseline = windows.X[windows.y == 0]
        if len(baseline) == 0:
            raise NoBaselineWindowsError(sid)
        means = baseline.mean(axis=0)
        stats[sid] = means
        subjects[sid] = SubjectWindows(
            X=windows.X - means, y=windows.y.copy(), starts=windows.starts.copy()
        )
        logger.debug("Subject %s: baseline from %d windows", sid, len(baseline))

    return ds.replace_subjects(subjects, normalized=True), stats


@dataclass(frozen=True)
class Standardizer:
    """Z-scoring of feature columns with statistics from training windows.

    Columns whose spread is below ``1e-12`` are only centred.
    """

    mean: np.ndarray
    scale: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> Standardizer:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        std = X.std(axis=0)
        return cls(mean=X.mean(axis=0), scale=np.where(std < ZERO_SPREAD, 1.0, std))

    @classmethod
    def identity(cls, n_features: int = N_FEATURES) -> Standardizer:
        return cls(mean=np.zeros(n_features), scale=np.ones(n_features))

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.scale

    def transform_dataset(self, ds: WindowedDataset) -> WindowedDataset:
        """Apply the transform to every subject's windows."""
        return ds.replace_subjects(
            {
                sid: SubjectWindows(X=self.transform(w.X), y=w.y, starts=w.starts)
                for sid, w in ds.subjects.items()
            }
        )
