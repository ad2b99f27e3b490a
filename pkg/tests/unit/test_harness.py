"""Unit tests for test-set evaluation and aggregation."""

import pytest

from mtstress.evaluation.errors import ConsistencyError
from mtstress.evaluation.families import ModelKind, fit_model
from mtstress.evaluation.harness import ModelScores, SubjectScore, evaluate_all
from mtstress.evaluation.splits import SplitManifest
from mtstress.features.dataset import WindowedDataset


def score(subject_id: str, f1: float, kappa: float) -> SubjectScore:
    return SubjectScore(subject_id=subject_id, f1=f1, kappa=kappa, n_test=10)


class TestAggregate:
    """Tests for ModelScores.aggregate."""

    def test_mean_and_population_std(self):
        """Test that 0.9 and 0.7 aggregate to 0.8 ± 0.1."""
        scores = ModelScores.aggregate("lr", [score("A", 0.9, 0.8), score("B", 0.7, 0.4)])

        assert scores.mean_f1 == pytest.approx(0.8)
        assert scores.std_f1 == pytest.approx(0.1)
        assert scores.mean_kappa == pytest.approx(0.6)
        assert scores.std_kappa == pytest.approx(0.2)

    def test_order_independent(self):
        """Test that subject order does not change the aggregates."""
        subjects = [score("A", 0.1, 0.3), score("B", 0.7, -0.2), score("C", 0.35, 0.9)]

        forward = ModelScores.aggregate("lr", subjects)
        backward = ModelScores.aggregate("lr", subjects[::-1])

        assert forward.mean_f1 == backward.mean_f1
        assert forward.std_kappa == backward.std_kappa

    def test_single_subject_has_zero_std(self):
        """Test the spread of a single subject."""
        scores = ModelScores.aggregate("lr", [score("A", 0.5, 0.1)])

        assert scores.std_f1 == 0.0


class TestEvaluateAll:
    """Tests for evaluate_all function."""

    def test_scores_every_model_and_subject(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that each model is scored on each subject's test windows."""
        train = feature_split.train_set(feature_dataset)
        models = {
            "lr": fit_model(ModelKind.LR, train, {"l2_lambda": 1e-3}, seed=0),
            "svm-l": fit_model(ModelKind.SVM_L, train, {"C": 1.0}, seed=0),
        }

        report = evaluate_all(models, feature_dataset, feature_split)

        assert report.dataset == "unit"
        assert report.seed == 0
        assert [m.name for m in report.models] == ["lr", "svm-l"]
        lr = report.model("lr")
        assert [s.subject_id for s in lr.per_subject] == ["S01", "S02", "S03"]
        assert all(s.n_test == 8 for s in lr.per_subject)
        assert lr.mean_f1 >= 0.9

    def test_rejects_foreign_split(
        self, feature_dataset: WindowedDataset, feature_split: SplitManifest
    ):
        """Test that a split of other data is refused."""
        smaller = feature_dataset.replace_subjects(
            {sid: w for sid, w in feature_dataset.subjects.items() if sid != "S03"}
        )

        with pytest.raises(ConsistencyError):
            evaluate_all({}, smaller, feature_split)
