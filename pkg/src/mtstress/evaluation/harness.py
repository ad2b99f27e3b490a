"""Test-set evaluation of trained models and aggregation across subjects."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mtstress.evaluation.families import predict_labels
from mtstress.evaluation.metrics import ConfusionMatrix, cohen_kappa, f1_score

if TYPE_CHECKING:
    from collections.abc import Mapping

    from mtstress.evaluation.families import TrainedModel
    from mtstress.evaluation.splits import SplitManifest
    from mtstress.features.dataset import WindowedDataset

logger = logging.getLogger(__name__)


class SubjectScore(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    subject_id: str
    f1: float = Field(ge=0, le=1)
    kappa: float = Field(ge=-1, le=1)
    n_test: int = Field(ge=0)


class ModelScores(BaseModel):
    """Per-subject test scores of one model and their mean and population std."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    per_subject: list[SubjectScore]
    mean_f1: float
    std_f1: float
    mean_kappa: float
    std_kappa: float

    @classmethod
    def aggregate(cls, name: str, per_subject: list[SubjectScore]) -> ModelScores:
        """Summarise subject scores; the result does not depend on subject order."""
        f1 = np.sort([s.f1 for s in per_subject])
        kappa = np.sort([s.kappa for s in per_subject])
        return cls(
            name=name,
            per_subject=per_subject,
            mean_f1=float(np.mean(f1)),
            std_f1=float(np.std(f1)),
            mean_kappa=float(np.mean(kappa)),
            std_kappa=float(np.std(kappa)),
        )


class MetricsReport(BaseModel):
    """Test-set results of every evaluated model on one dataset and split seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset: str
    seed: int
    models: list[ModelScores]

    def model(self, name: str) -> ModelScores:
        return next(m for m in self.models if m.name == name)


def score_subjects(model: TrainedModel, test: WindowedDataset) -> list[SubjectScore]:
    """F1 and kappa of ``model`` on each subject's test windows."""
    scores = []
    for sid, (y_true, y_pred) in predict_labels(model, test).items():
        cm = ConfusionMatrix.from_labels(y_true, y_pred)
        scores.append(
            SubjectScore(subject_id=sid, f1=f1_score(cm), kappa=cohen_kappa(cm), n_test=cm.total)
        )
    return scores


def evaluate_all(
    models: Mapping[str, TrainedModel],
    ds: WindowedDataset,
    split: SplitManifest,
) -> MetricsReport:
    """Score every model on the test windows of ``split``.

    Personalized networks route each subject's windows to that subject's head;
    pooled models score all subjects with the same parameters.

    Raises
    ------
    ConsistencyError
        If ``split`` does not describe ``ds``.
    TaskMissingHeadError
        If a personalized model lacks a head for a test subject.

    """
    split.check_matches(ds)
    test = split.test_set(ds)
    results = []
    for name, model in models.items():
        scores = ModelScores.aggregate(name, score_subjects(model, test))
        logger.info(
            "%s: F1 %.3f ± %.3f, kappa %.3f ± %.3f",
            name,
            scores.mean_f1,
            scores.std_f1,
            scores.mean_kappa,
            scores.std_kappa,
        )
        results.append(scores)
    return MetricsReport(dataset=split.dataset, seed=split.seed, models=results)
