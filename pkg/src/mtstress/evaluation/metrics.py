"""Confusion matrix, F1 and Cohen's kappa for binary stress detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mtstress.evaluation.errors import EmptyMatrixError


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts of a binary classifier's outcomes, stress (1) being positive."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            msg = f"Confusion counts must be non-negative: {self}"
            raise ValueError(msg)

    @classmethod
    def from_labels(cls, y_true: np.ndarray, y_pred: np.ndarray) -> ConfusionMatrix:
        y_true = np.asarray(y_true, dtype=int)
        y_pred = np.asarray(y_pred, dtype=int)
        if y_true.shape != y_pred.shape:
            msg = f"Label vectors differ in shape: {y_true.shape} vs {y_pred.shape}"
            raise ValueError(msg)
        return cls(
            tp=int(np.sum((y_true == 1) & (y_pred == 1))),
            fp=int(np.sum((y_true == 0) & (y_pred == 1))),
            fn=int(np.sum((y_true == 1) & (y_pred == 0))),
            tn=int(np.sum((y_true == 0) & (y_pred == 0))),
        )

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other: ConfusionMatrix) -> ConfusionMatrix:
        return ConfusionMatrix(
            self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn
        )


def f1_score(cm: ConfusionMatrix) -> float:
    """Positive-class F1 ``2tp / (2tp + fp + fn)``; 0 when there is nothing to score.

    Examples
    --------
    >>> f1_score(ConfusionMatrix(tp=40, fp=10, fn=10, tn=40))
    0.8

    """
    denominator = 2 * cm.tp + cm.fp + cm.fn
    if denominator == 0:
        return 0.0
    return 2 * cm.tp / denominator


def cohen_kappa(cm: ConfusionMatrix) -> float:
    """Chance-corrected agreement ``(p_o - p_e) / (1 - p_e)``; 0 when ``p_e`` is 1.

    Raises
    ------
    EmptyMatrixError
        If the matrix counts no window.

    Examples
    --------
    >>> round(cohen_kappa(ConfusionMatrix(tp=40, fp=10, fn=10, tn=40)), 12)
    0.6

    """
    n = cm.total
    if n == 0:
        msg = "Cohen's kappa of an empty confusion matrix"
        raise EmptyMatrixError(msg)
    p_o = (cm.tp + cm.tn) / n
    p_e = ((cm.tp + cm.fp) * (cm.tp + cm.fn) + (cm.fn + cm.tn) * (cm.fp + cm.tn)) / n**2
    if p_e == 1:
        return 0.0
    return (p_o - p_e) / (1 - p_e)
