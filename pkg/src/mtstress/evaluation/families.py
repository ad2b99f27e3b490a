"""Model kinds, their hyper-parameter grids, and fitting/prediction behind one interface."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from itertools import product
from typing import TYPE_CHECKING

import numpy as np

from mtstress.baselines.logreg import LogRegConfig, LogRegModel, train_logreg
from mtstress.baselines.svm import Kernel, SvmConfig, SvmModel, train_svm
from mtstress.evaluation.errors import TaskMissingHeadError
from mtstress.features.dataset import SubjectWindows, WindowedDataset
from mtstress.features.normalization import Standardizer
from mtstress.nn.network import MtlNetwork
from mtstress.nn.training import TrainConfig, TrainingLog, train_mtl
from mtstress.rng import derive_seed, stream

if TYPE_CHECKING:
    from collections.abc import Mapping

logger = logging.getLogger(__name__)

POOLED_TASK = "pooled"
INIT_STREAM = 2
TRAIN_STREAM = 3

Hyperparams = dict[str, float]

L2_GRID = (1e-4, 1e-3, 1e-2)
C_GRID = (0.1, 1.0, 10.0)
GAMMA_GRID = (0.01, 0.1, 1.0)


class ModelKind(StrEnum):
    LR = "lr"
    SVM_L = "svm-l"
    SVM_RBF = "svm-rbf"
    ST_NN = "st-nn"
    MT_NN = "mt-nn"

    @property
    def label(self) -> str:
        """Display name used in report tables."""
        return MODEL_LABELS[self]

    @property
    def is_network(self) -> bool:
        return self in {ModelKind.ST_NN, ModelKind.MT_NN}


MODEL_LABELS = {
    ModelKind.LR: "LR",
    ModelKind.SVM_L: "SVM (L)",
    ModelKind.SVM_RBF: "SVM (RBF)",
    ModelKind.ST_NN: "ST-NN",
    ModelKind.MT_NN: "MT-NN",
}


def param_grid(kind: ModelKind) -> list[Hyperparams]:
    """Default hyper-parameter grid of ``kind``, strongest regularisation first."""
    match kind:
        case ModelKind.LR | ModelKind.ST_NN | ModelKind.MT_NN:
            grid = [{"l2_lambda": lam} for lam in L2_GRID]
        case ModelKind.SVM_L:
            grid = [{"C": c} for c in C_GRID]
        case ModelKind.SVM_RBF:
            grid = [{"C": c, "gamma": g} for c, g in product(C_GRID, GAMMA_GRID)]
    return sort_by_strength(grid)


def regularization_key(params: Hyperparams) -> tuple[float, ...]:
    """Sort key that puts stronger regularisation first.

    A larger ``l2_lambda``, a smaller ``C`` and a smaller ``gamma`` are stronger,
    compared in that order.
    """
    return (
        -params.get("l2_lambda", 0.0),
        params.get("C", 0.0),
        params.get("gamma", 0.0),
    )


def sort_by_strength(grid: list[Hyperparams]) -> list[Hyperparams]:
    return sorted(grid, key=regularization_key)


Classifier = LogRegModel | SvmModel


@dataclass
class PerSubjectModel:
    """One baseline classifier per subject."""

    models: dict[str, Classifier]

    def predict(self, X: np.ndarray, subject_id: str) -> np.ndarray:
        if subject_id not in self.models:
            raise TaskMissingHeadError(subject_id)
        return self.models[subject_id].predict(X)


@dataclass
class TrainedModel:
    """A fitted model of some kind together with its input standardisation.

    Attributes
    ----------
    kind : ModelKind
        Model family
    params : Hyperparams
        Hyper-parameters it was trained with
    standardizer : Standardizer
        Feature scaling fitted on the training windows
    model : MtlNetwork | LogRegModel | SvmModel | PerSubjectModel
        The fitted parameters
    log : TrainingLog | None
        Training log for networks
    train_config : TrainConfig | None
        Training settings for networks

    """

    kind: ModelKind
    params: Hyperparams
    standardizer: Standardizer
    model: MtlNetwork | Classifier | PerSubjectModel
    log: TrainingLog | None = None
    train_config: TrainConfig | None = None

    def predict(self, X: np.ndarray, subject_id: str) -> np.ndarray:
        """Binary predictions for windows of ``subject_id``.

        Raises
        ------
        TaskMissingHeadError
            If a personalized model has no head for ``subject_id``.

        """
        Z = self.standardizer.transform(np.atleast_2d(X))
        match self.model:
            case MtlNetwork() as net:
                task = subject_id if self.kind is ModelKind.MT_NN else POOLED_TASK
                if task not in net.task_layers:
                    raise TaskMissingHeadError(subject_id)
                return (net.predict_proba(Z, task) >= 0.5).astype(int)  # noqa: PLR2004
            case PerSubjectModel() as per_subject:
                return per_subject.predict(Z, subject_id)
            case model:
                return model.predict(Z)


def _pooled_task(ds: WindowedDataset) -> WindowedDataset:
    X, y = ds.pooled()
    starts = np.concatenate([w.starts for w in ds.subjects.values()])
    return ds.replace_subjects({POOLED_TASK: SubjectWindows(X=X, y=y, starts=starts)})


def _fit_classifier(
    kind: ModelKind, X: np.ndarray, y: np.ndarray, params: Hyperparams
) -> Classifier:
    match kind:
        case ModelKind.LR:
            return train_logreg(X, y, params["l2_lambda"], LogRegConfig())
        case ModelKind.SVM_L:
            return train_svm(X, y, SvmConfig(kernel=Kernel.LINEAR, C=params["C"]))
        case ModelKind.SVM_RBF:
            return train_svm(
                X, y, SvmConfig(kernel=Kernel.RBF, C=params["C"], gamma=params["gamma"])
            )
        case _:
            msg = f"{kind} is not a baseline classifier"
            raise ValueError(msg)


def fit_model(
    kind: ModelKind,
    train: WindowedDataset,
    params: Hyperparams,
    *,
    seed: int,
    train_cfg: TrainConfig | None = None,
    per_subject: bool = False,
) -> TrainedModel:
    """Fit a model of ``kind`` on ``train``.

    Features are z-scored with statistics of all training windows. MT-NN gets one
    tower per subject; ST-NN is the same network with a single tower trained on the
    pooled windows. Baselines are pooled too, unless ``per_subject`` asks for one
    classifier per subject.
    """
    standardizer = Standardizer.fit(train.pooled()[0])
    scaled = standardizer.transform_dataset(train)

    if kind.is_network:
        tasks = scaled if kind is ModelKind.MT_NN else _pooled_task(scaled)
        cfg = (train_cfg or TrainConfig()).model_copy(
            update={"l2_lambda": params["l2_lambda"], "seed": derive_seed(seed, TRAIN_STREAM)}
        )
        net = MtlNetwork.build(tasks.subject_ids, stream(seed, INIT_STREAM))
        net, log = train_mtl(net, tasks, cfg)
        return TrainedModel(kind, dict(params), standardizer, net, log, cfg)

    if per_subject:
        models = {
            sid: _fit_classifier(kind, w.X, w.y, params) for sid, w in scaled.subjects.items()
        }
        return TrainedModel(kind, dict(params), standardizer, PerSubjectModel(models))

    X, y = scaled.pooled()
    return TrainedModel(kind, dict(params), standardizer, _fit_classifier(kind, X, y, params))


def predict_labels(
    model: TrainedModel, ds: WindowedDataset
) -> Mapping[str, tuple[np.ndarray, np.ndarray]]:
    """True and predicted labels of every subject of ``ds``."""
    return {sid: (w.y, model.predict(w.X, sid)) for sid, w in ds.subjects.items()}
