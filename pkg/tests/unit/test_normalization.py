"""Unit tests for baseline normalization and feature standardization."""

import numpy as np
import pytest

from mtstress.features.dataset import N_FEATURES, SubjectWindows, WindowedDataset
from mtstress.features.normalization import (
    AlreadyNormalizedError,
    NoBaselineWindowsError,
    Standardizer,
    baseline_normalize,
)


def make_windows(rows: list[float], labels: list[int]) -> SubjectWindows:
    """Windows whose every feature equals the given row value."""
    X = np.repeat(np.asarray(rows, dtype=float)[:, None], N_FEATURES, axis=1)
    return SubjectWindows(X=X, y=np.asarray(labels), starts=15.0 * np.arange(len(rows)))


@pytest.fixture
def dataset() -> WindowedDataset:
    """Two subjects with different resting levels."""
    return WindowedDataset(
        subjects={
            "A": make_windows([10.0, 12.0, 20.0], [0, 0, 1]),
            "B": make_windows([100.0, 130.0], [0, 1]),
        }
    )


class TestBaselineNormalize:
    """Tests for baseline_normalize function."""

    def test_subtracts_baseline_mean(self, dataset: WindowedDataset):
        """Test that each subject's baseline mean is removed from all its windows."""
        normalized, stats = baseline_normalize(dataset)

        assert normalized.normalized
        assert normalized.subjects["A"].X[:, 0].tolist() == [-1.0, 1.0, 9.0]
        assert normalized.subjects["B"].X[:, 5].tolist() == [0.0, 30.0]
        assert stats["A"].tolist() == [11.0] * N_FEATURES
        assert stats["B"].tolist() == [100.0] * N_FEATURES

    def test_baseline_mean_becomes_zero(self, dataset: WindowedDataset):
        """Test that normalized baseline windows average to zero per feature."""
        normalized, _ = baseline_normalize(dataset)

        for windows in normalized.subjects.values():
            assert windows.X[windows.y == 0].mean(axis=0) == pytest.approx(
                np.zeros(N_FEATURES)
            )

    def test_labels_unchanged(self, dataset: WindowedDataset):
        """Test that normalization keeps labels and start times."""
        normalized, _ = baseline_normalize(dataset)

        assert normalized.subjects["A"].y.tolist() == [0, 0, 1]
        assert normalized.subjects["A"].starts.tolist() == [0.0, 15.0, 30.0]

    def test_no_baseline_windows(self):
        """Test that a subject with only stress windows cannot be normalized."""
        ds = WindowedDataset(subjects={"C": make_windows([1.0, 2.0], [1, 1])})

        with pytest.raises(NoBaselineWindowsError) as info:
            baseline_normalize(ds)
        assert info.value.subject_id == "C"

    def test_twice_is_rejected(self, dataset: WindowedDataset):
        """Test that an already normalized dataset is not normalized again."""
        normalized, _ = baseline_normalize(dataset)

        with pytest.raises(AlreadyNormalizedError):
            baseline_normalize(normalized)


class TestStandardizer:
    """Tests for Standardizer."""

    def test_fit_transform_has_unit_spread(self):
        """Test that fitted columns come out with zero mean and unit std."""
        X = np.random.default_rng(0).normal(5.0, 3.0, size=(50, N_FEATURES))

        Z = Standardizer.fit(X).transform(X)

        assert Z.mean(axis=0) == pytest.approx(np.zeros(N_FEATURES), abs=1e-12)
        assert Z.std(axis=0) == pytest.approx(np.ones(N_FEATURES))

    def test_constant_column_is_only_centred(self):
        """Test that a zero-spread column gets scale 1."""
        X = np.column_stack([np.full(4, 7.0), np.arange(4.0)])

        scaler = Standardizer.fit(X)

        assert scaler.scale[0] == 1.0
        assert scaler.transform(X)[:, 0].tolist() == [0.0] * 4

    def test_identity(self):
        """Test that the identity standardizer leaves features unchanged."""
        X = np.arange(2.0 * N_FEATURES).reshape(2, N_FEATURES)

        assert Standardizer.identity().transform(X).tolist() == X.tolist()

    def test_transform_dataset(self, dataset: WindowedDataset):
        """Test that every subject's windows are transformed."""
        scaler = Standardizer(mean=np.full(N_FEATURES, 10.0), scale=np.full(N_FEATURES, 2.0))

        out = scaler.transform_dataset(dataset)

        assert out.subjects["A"].X[:, 0].tolist() == [0.0, 1.0, 5.0]
        assert out.subjects["B"].y.tolist() == [0, 1]
