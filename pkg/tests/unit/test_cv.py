"""Unit tests for cross-validated hyper-parameter selection."""

import numpy as np
import pytest

from mtstress.evaluation.cv import run_cv
from mtstress.evaluation.errors import EvaluationError, FoldError
from mtstress.evaluation.families import ModelKind
from mtstress.evaluation.splits import SplitManifest, make_split
from mtstress.features.dataset import SubjectWindows, WindowedDataset
from mtstress.nn.training import TrainConfig


class TestRunCv:
    """Tests for run_cv function."""

    def test_single_grid_point(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that a one-point grid is selected with a score per fold."""
        result = run_cv(ModelKind.LR, feature_dataset, feature_split, [{"l2_lambda": 1e-3}])

        assert result.best_params == {"l2_lambda": 1e-3}
        assert len(result.best.fold_f1) == 5
        assert result.best.mean_f1 >= 0.9

    def test_tie_prefers_stronger_regularisation(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that equal scores select the largest penalty."""
        grid = [{"l2_lambda": 1e-4}, {"l2_lambda": 1e-2}, {"l2_lambda": 1e-3}]

        result = run_cv(ModelKind.LR, feature_dataset, feature_split, grid)

        assert [point.mean_f1 for point in result.grid] == [1.0, 1.0, 1.0]
        assert result.best_params == {"l2_lambda": 1e-2}

    def test_tie_prefers_smaller_c(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that equal SVM scores select the smallest C."""
        result = run_cv(ModelKind.SVM_L, feature_dataset, feature_split)

        assert result.best_params == {"C": 0.1}

    def test_parallel_matches_serial(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that the thread count does not change the scores."""
        cfg = TrainConfig(max_epochs=2)
        grid = [{"l2_lambda": 1e-3}]

        serial = run_cv(ModelKind.ST_NN, feature_dataset, feature_split, grid, train_cfg=cfg)
        parallel = run_cv(
            ModelKind.ST_NN, feature_dataset, feature_split, grid, train_cfg=cfg, jobs=3
        )

        assert serial.best.fold_f1 == parallel.best.fold_f1

    def test_fold_error_names_fold(self, feature_dataset: WindowedDataset):
        """Test that a training failure reports the fold and grid point."""
        one_class = feature_dataset.replace_subjects(
            {
                sid: SubjectWindows(X=w.X, y=np.zeros(len(w), dtype=int), starts=w.starts)
                for sid, w in feature_dataset.subjects.items()
            }
        )
        split = make_split(one_class, seed=0)

        with pytest.raises(FoldError, match="Fold 0") as info:
            run_cv(ModelKind.LR, one_class, split, [{"l2_lambda": 1e-3}])
        assert info.value.fold == 0
        assert info.value.params == {"l2_lambda": 1e-3}

    def test_empty_grid(self, feature_dataset: WindowedDataset, feature_split: SplitManifest):
        """Test that an empty grid is rejected."""
        with pytest.raises(EvaluationError):
            run_cv(ModelKind.LR, feature_dataset, feature_split, [])
