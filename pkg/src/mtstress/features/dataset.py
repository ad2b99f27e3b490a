"""Windowed feature datasets: per-subject feature matrices with labels."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

FEATURE_NAMES = (
    "hr_mean",
    "hr_std",
    "hr_min",
    "hr_max",
    "hr_range",
    "hr_rmssd",
    "hr_sdsd",
    "sc_mean",
    "sc_std",
    "sc_min",
    "sc_max",
    "sc_range",
    "sc_num_peaks",
    "sc_amplitude",
    "sc_skewness",
    "sc_kurtosis",
)
N_FEATURES = len(FEATURE_NAMES)


class FeatureError(Exception):
    """Base exception for windowing and feature extraction errors."""


class FeatureVector(NamedTuple):
    """One window's 16 features in canonical order, with its label and origin."""

    values: np.ndarray
    label: int
    subject_id: str
    window_start_s: float


@dataclass(frozen=True)
class SubjectWindows:
    """All windows of one subject.

    Attributes
    ----------
    X : np.ndarray
        Feature matrix, one row of N_FEATURES values per window
    y : np.ndarray
        Binary window labels
    starts : np.ndarray
        Window start times in seconds

    """

    X: np.ndarray
    y: np.ndarray
    starts: np.ndarray

    def __post_init__(self) -> None:
        if self.X.ndim != 2 or self.X.shape[1] != N_FEATURES:  # noqa: PLR2004
            msg = f"Feature matrix must have {N_FEATURES} columns, got {self.X.shape}"
            raise ValueError(msg)
        if not len(self.X) == len(self.y) == len(self.starts):
            msg = "Features, labels and start times must have equal length"
            raise ValueError(msg)

    def __len__(self) -> int:
        return len(self.y)

    def take(self, indices: np.ndarray) -> SubjectWindows:
        """Return the windows at ``indices``, in that order."""
        return SubjectWindows(
            X=self.X[indices], y=self.y[indices], starts=self.starts[indices]
        )


@dataclass(frozen=True)
class WindowedDataset:
    """Per-subject windowed features.

    Attributes
    ----------
    subjects : dict[str, SubjectWindows]
        Windows of each subject, in a stable subject order
    window_len_s : float
        Window length used for extraction
    step_s : float
        Step between window starts
    normalized : bool
        True once features have been baseline-normalized

    """

    subjects: dict[str, SubjectWindows] = field(default_factory=dict)
    window_len_s: float = 30.0
    step_s: float = 15.0
    normalized: bool = False

    @property
    def subject_ids(self) -> list[str]:
        """Subject ids in dataset order."""
        return list(self.subjects)

    @property
    def n_windows(self) -> int:
        """Total number of windows over all subjects."""
        return sum(len(w) for w in self.subjects.values())

    def replace_subjects(
        self, subjects: dict[str, SubjectWindows], **changes: object
    ) -> WindowedDataset:
        """Return a copy with other subject windows (and optionally other fields)."""
        return dataclasses.replace(self, subjects=subjects, **changes)  # type: ignore[arg-type]

    def take(self, indices: Mapping[str, np.ndarray]) -> WindowedDataset:
        """Restrict every listed subject to the given window indices."""
        return self.replace_subjects(
            {
                sid: self.subjects[sid].take(np.asarray(idx, dtype=int))
                for sid, idx in indices.items()
            }
        )

    def pooled(self) -> tuple[np.ndarray, np.ndarray]:
        """Stack all subjects into one feature matrix and label vector."""
        if not self.subjects:
            return np.empty((0, N_FEATURES)), np.empty(0, dtype=int)
        X = np.vstack([w.X for w in self.subjects.values()])
        y = np.concatenate([w.y for w in self.subjects.values()])
        return X, y

    def vectors(self) -> Iterator[FeatureVector]:
        """Iterate over every window as a FeatureVector."""
        for sid, windows in self.subjects.items():
            for values, label, start in zip(
                windows.X, windows.y, windows.starts, strict=True
            ):
                yield FeatureVector(values, int(label), sid, float(start))
