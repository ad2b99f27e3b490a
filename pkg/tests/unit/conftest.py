"""Shared fixtures for unit tests."""

import numpy as np
import pytest

from mtstress.evaluation.splits import SplitManifest, make_split
from mtstress.features.dataset import N_FEATURES, SubjectWindows, WindowedDataset


def separable_subject(rng: np.random.Generator, n: int, offset: float) -> SubjectWindows:
    """Alternating labels encoded with a wide margin in feature 0."""
    y = np.arange(n) % 2
    X = rng.normal(scale=0.5, size=(n, N_FEATURES))
    X[:, 0] = offset + np.where(y == 1, 3.0, -3.0) + 0.2 * rng.normal(size=n)
    return SubjectWindows(X=X, y=y, starts=15.0 * np.arange(n))


@pytest.fixture
def feature_dataset() -> WindowedDataset:
    """Three baseline-normalized subjects of 40 easily separable windows."""
    rng = np.random.default_rng(21)
    return WindowedDataset(
        subjects={
            sid: separable_subject(rng, 40, offset)
            for sid, offset in (("S01", 0.0), ("S02", 0.3), ("S03", -0.3))
        },
        normalized=True,
    )


@pytest.fixture
def feature_split(feature_dataset: WindowedDataset) -> SplitManifest:
    """Seed-0 split of the feature dataset."""
    return make_split(feature_dataset, seed=0, dataset="unit")
