"""Seeded per-subject train/test split with cross-validation folds."""

from __future__ import annotations

import logging
import math
import zlib
from typing import TYPE_CHECKING, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from mtstress.evaluation.errors import ConsistencyError, SubjectTooSmallError
from mtstress.rng import stream

if TYPE_CHECKING:
    from mtstress.features.dataset import WindowedDataset

logger = logging.getLogger(__name__)

TEST_FRACTION = 0.2
N_FOLDS = 5
MIN_SUBJECT_WINDOWS = 10
SPLIT_STREAM = 1


class SubjectSplit(BaseModel):
    """Window indices of one subject: a test set and the folds of its train set."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_windows: int = Field(ge=1)
    test: list[int]
    folds: list[list[int]]

    @property
    def train(self) -> list[int]:
        return sorted(i for fold in self.folds for i in fold)

    def fold(self, k: int) -> tuple[list[int], list[int]]:
        """Train and validation indices when fold ``k`` is held out."""
        train = sorted(i for f, fold in enumerate(self.folds) if f != k for i in fold)
        return train, list(self.folds[k])


class SplitManifest(BaseModel):
    """Train/test split and CV folds of every subject, reproducible from the seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset: str
    seed: int
    test_fraction: float = Field(default=TEST_FRACTION, gt=0, lt=1)
    n_folds: int = Field(default=N_FOLDS, ge=2)
    subjects: dict[str, SubjectSplit]

    @model_validator(mode="after")
    def _check_partition(self) -> Self:
        for sid, split in self.subjects.items():
            if len(split.folds) != self.n_folds:
                msg = f"Subject {sid} has {len(split.folds)} folds, expected {self.n_folds}"
                raise ValueError(msg)
            indices = sorted([*split.test, *split.train])
            if indices != list(range(split.n_windows)):
                msg = f"Split of subject {sid} is not a partition of its windows"
                raise ValueError(msg)
        return self

    def check_matches(self, ds: WindowedDataset) -> None:
        """Raise ConsistencyError unless ``ds`` has exactly the split's subjects and sizes."""
        if set(ds.subjects) != set(self.subjects):
            msg = (
                f"Split subjects {sorted(self.subjects)} differ from "
                f"feature subjects {sorted(ds.subjects)}"
            )
            raise ConsistencyError(msg)
        for sid, split in self.subjects.items():
            if len(ds.subjects[sid]) != split.n_windows:
                msg = (
                    f"Subject {sid} has {len(ds.subjects[sid])} windows, "
                    f"split expects {split.n_windows}"
                )
                raise ConsistencyError(msg)

    def train_set(self, ds: WindowedDataset) -> WindowedDataset:
        return ds.take({sid: np.array(s.train, dtype=int) for sid, s in self.subjects.items()})

    def test_set(self, ds: WindowedDataset) -> WindowedDataset:
        return ds.take({sid: np.array(s.test, dtype=int) for sid, s in self.subjects.items()})

    def fold_sets(
        self, ds: WindowedDataset, k: int
    ) -> tuple[WindowedDataset, WindowedDataset]:
        """Training and validation datasets of fold ``k``."""
        folds = {sid: s.fold(k) for sid, s in self.subjects.items()}
        train = ds.take({sid: np.array(f[0], dtype=int) for sid, f in folds.items()})
        val = ds.take({sid: np.array(f[1], dtype=int) for sid, f in folds.items()})
        return train, val


def subject_key(subject_id: str) -> int:
    """Stable integer key of a subject id for seeding its stream."""
    return zlib.crc32(subject_id.encode("utf-8"))


def make_split(
    ds: WindowedDataset,
    seed: int,
    *,
    dataset: str = "",
    test_fraction: float = TEST_FRACTION,
    n_folds: int = N_FOLDS,
    min_windows: int = MIN_SUBJECT_WINDOWS,
) -> SplitManifest:
    """Shuffle each subject's windows, hold out ``round(test_fraction * n)`` for test
    and deal the rest into ``n_folds`` folds whose sizes differ by at most one.

    A subject's split depends only on the seed and its own id and size.

    Raises
    ------
    SubjectTooSmallError
        If a subject has fewer than ``min_windows`` windows.

    """
    subjects: dict[str, SubjectSplit] = {}
    for sid, windows in ds.subjects.items():
        n = len(windows)
        if n < min_windows:
            raise SubjectTooSmallError(sid, n, min_windows)
        order = stream(seed, SPLIT_STREAM, subject_key(sid)).permutation(n)
        n_test = math.floor(test_fraction * n + 0.5)
        test, train = order[:n_test], order[n_test:]
        subjects[sid] = SubjectSplit(
            n_windows=n,
            test=sorted(test.tolist()),
            folds=[sorted(fold.tolist()) for fold in np.array_split(train, n_folds)],
        )
        logger.debug("Subject %s: %d train, %d test windows", sid, len(train), n_test)
    return SplitManifest(
        dataset=dataset,
        seed=seed,
        test_fraction=test_fraction,
        n_folds=n_folds,
        subjects=subjects,
    )
