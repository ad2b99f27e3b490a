"""Unit tests for confusion matrices, F1 and Cohen's kappa."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from sklearn.metrics import cohen_kappa_score
from sklearn.metrics import f1_score as sklearn_f1

from mtstress.evaluation.errors import EmptyMatrixError
from mtstress.evaluation.metrics import ConfusionMatrix, cohen_kappa, f1_score


def exact_kappa(cm: ConfusionMatrix) -> Fraction:
    """Kappa in exact rational arithmetic."""
    n = cm.total
    p_o = Fraction(cm.tp + cm.tn, n)
    p_e = Fraction((cm.tp + cm.fp) * (cm.tp + cm.fn) + (cm.fn + cm.tn) * (cm.fp + cm.tn), n * n)
    return Fraction(0) if p_e == 1 else (p_o - p_e) / (1 - p_e)


class TestConfusionMatrix:
    """Tests for ConfusionMatrix."""

    def test_from_labels(self):
        """Test counting the four outcomes."""
        cm = ConfusionMatrix.from_labels(np.array([1, 1, 0, 0, 1]), np.array([1, 0, 1, 0, 1]))

        assert cm == ConfusionMatrix(tp=2, fp=1, fn=1, tn=1)
        assert cm.total == 5

    def test_addition(self):
        """Test that matrices add count by count."""
        total = ConfusionMatrix(1, 2, 3, 4) + ConfusionMatrix(10, 20, 30, 40)

        assert total == ConfusionMatrix(11, 22, 33, 44)

    def test_shape_mismatch(self):
        """Test that label vectors must have equal length."""
        with pytest.raises(ValueError, match="shape"):
            ConfusionMatrix.from_labels(np.array([1, 0]), np.array([1]))


class TestF1Score:
    """Tests for f1_score function."""

    def test_value(self):
        """Test F1 on a balanced matrix."""
        assert f1_score(ConfusionMatrix(tp=40, fp=10, fn=10, tn=40)) == pytest.approx(0.8)

    def test_no_positives(self):
        """Test that F1 is 0 when neither truth nor prediction has stress."""
        assert f1_score(ConfusionMatrix(tn=7)) == 0.0

    def test_matches_sklearn(self):
        """Test agreement with sklearn on random labels."""
        rng = np.random.default_rng(0)
        y_true, y_pred = rng.integers(0, 2, 200), rng.integers(0, 2, 200)

        cm = ConfusionMatrix.from_labels(y_true, y_pred)

        assert f1_score(cm) == pytest.approx(sklearn_f1(y_true, y_pred))


class TestCohenKappa:
    """Tests for cohen_kappa function."""

    def test_value(self):
        """Test kappa on a balanced matrix."""
        assert cohen_kappa(ConfusionMatrix(tp=40, fp=10, fn=10, tn=40)) == pytest.approx(0.6)

    def test_perfect_agreement(self):
        """Test that perfect predictions give kappa 1."""
        assert cohen_kappa(ConfusionMatrix(tp=5, tn=5)) == pytest.approx(1.0)

    def test_chance_agreement_is_zero(self):
        """Test that a single-class truth and prediction give kappa 0."""
        assert cohen_kappa(ConfusionMatrix(tp=9)) == 0.0

    def test_empty(self):
        """Test that an empty matrix has no kappa."""
        with pytest.raises(EmptyMatrixError):
            cohen_kappa(ConfusionMatrix())

    def test_exhaustive_small_matrices(self):
        """Test every matrix with up to four counts per cell against exact arithmetic."""
        for counts in product(range(5), repeat=4):
            cm = ConfusionMatrix(*counts)
            if cm.total == 0:
                continue
            expected = float(exact_kappa(cm))
            assert cohen_kappa(cm) == pytest.approx(expected, abs=1e-12), counts
            assert -1.0 - 1e-12 <= cohen_kappa(cm) <= 1.0 + 1e-12

    def test_matches_sklearn(self):
        """Test agreement with sklearn on correlated random labels."""
        rng = np.random.default_rng(1)
        y_true = rng.integers(0, 2, 300)
        y_pred = np.where(rng.random(300) < 0.7, y_true, 1 - y_true)

        cm = ConfusionMatrix.from_labels(y_true, y_pred)

        assert cohen_kappa(cm) == pytest.approx(cohen_kappa_score(y_true, y_pred))
