"""JSON checkpoints of trained models with a parameter checksum.

A checkpoint is an envelope (model kind, hyper-parameters, dataset, seed, feature
standardisation, checksum) around a payload whose ``kind`` field selects one of the
model layouts. Weight matrices are stored as shapes plus flattened row-major values.
"""

from __future__ import annotations

import hashlib
import logging
from typing import TYPE_CHECKING, Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from mtstress.baselines.logreg import LogRegModel
from mtstress.baselines.svm import Kernel, SvmModel
from mtstress.evaluation.families import ModelKind, PerSubjectModel, TrainedModel
from mtstress.features.normalization import Standardizer
from mtstress.nn.activations import Activation
from mtstress.nn.layers import DenseLayer
from mtstress.nn.network import MtlNetwork

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

logger = logging.getLogger(__name__)


class CheckpointError(Exception):
    """Raised when a checkpoint cannot be read or fails verification."""


class _Payload(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class LayerPayload(_Payload):
    shape: tuple[int, int]
    weights: list[float]
    biases: list[float]
    activation: Activation


class MtlNetworkPayload(_Payload):
    kind: Literal["mtl-network"] = "mtl-network"
    tasks: list[str]
    elu_alpha: float
    shared: LayerPayload
    task_layers: dict[str, LayerPayload]
    heads: dict[str, LayerPayload]
    train_config: dict[str, float | int] = Field(default_factory=dict)
    best_epoch: int | None = None
    epochs_run: int | None = None


class LogRegPayload(_Payload):
    kind: Literal["logreg"] = "logreg"
    weights: list[float]
    bias: float
    l2_lambda: float


class SvmPayload(_Payload):
    kind: Literal["svm"] = "svm"
    kernel: Kernel
    C: float
    gamma: float
    n_features: int
    support_vectors: list[float]
    dual_coefs: list[float]
    bias: float


class PerSubjectPayload(_Payload):
    kind: Literal["per-subject"] = "per-subject"
    models: dict[str, Annotated[LogRegPayload | SvmPayload, Field(discriminator="kind")]]


ModelPayload = Annotated[
    MtlNetworkPayload | LogRegPayload | SvmPayload | PerSubjectPayload,
    Field(discriminator="kind"),
]


class Checkpoint(_Payload):
    """On-disk form of a trained model."""

    model: ModelKind
    dataset: str
    seed: int
    hyperparameters: dict[str, float]
    feature_mean: list[float]
    feature_scale: list[float]
    payload: ModelPayload
    checksum: str


def _layer_payload(layer: DenseLayer) -> LayerPayload:
    return LayerPayload(
        shape=layer.weights.shape,
        weights=layer.weights.ravel().tolist(),
        biases=layer.biases.tolist(),
        activation=layer.activation,
    )


def _layer(payload: LayerPayload) -> DenseLayer:
    return DenseLayer(
        np.asarray(payload.weights, dtype=float).reshape(payload.shape),
        np.asarray(payload.biases, dtype=float),
        payload.activation,
    )


def to_payload(model: MtlNetwork | LogRegModel | SvmModel | PerSubjectModel) -> ModelPayload:
    """Convert fitted parameters to their checkpoint payload."""
    match model:
        case MtlNetwork():
            return MtlNetworkPayload(
                tasks=model.task_ids,
                elu_alpha=model.elu_alpha,
                shared=_layer_payload(model.shared),
                task_layers={t: _layer_payload(layer) for t, layer in model.task_layers.items()},
                heads={t: _layer_payload(layer) for t, layer in model.heads.items()},
            )
        case LogRegModel():
            weights = model.require_trained()
            return LogRegPayload(
                weights=weights.tolist(), bias=model.bias, l2_lambda=model.l2_lambda
            )
        case SvmModel():
            support, coefs = model.require_trained()
            return SvmPayload(
                kernel=model.kernel,
                C=model.C,
                gamma=model.gamma,
                n_features=support.shape[1],
                support_vectors=support.ravel().tolist(),
                dual_coefs=coefs.tolist(),
                bias=model.bias,
            )
        case PerSubjectModel():
            models = {}
            for sid, m in model.models.items():
                payload = to_payload(m)
                if not isinstance(payload, LogRegPayload | SvmPayload):
                    msg = f"Per-subject model of {sid} is not a baseline classifier"
                    raise CheckpointError(msg)
                models[sid] = payload
            return PerSubjectPayload(models=models)


def from_payload(
    payload: ModelPayload,
) -> MtlNetwork | LogRegModel | SvmModel | PerSubjectModel:
    """Rebuild fitted parameters from a checkpoint payload."""
    match payload:
        case MtlNetworkPayload():
            return MtlNetwork(
                _layer(payload.shared),
                {t: _layer(payload.task_layers[t]) for t in payload.tasks},
                {t: _layer(payload.heads[t]) for t in payload.tasks},
                payload.elu_alpha,
            )
        case LogRegPayload():
            return LogRegModel(np.asarray(payload.weights), payload.bias, payload.l2_lambda)
        case SvmPayload():
            support = np.asarray(payload.support_vectors, dtype=float)
            return SvmModel(
                kernel=payload.kernel,
                C=payload.C,
                gamma=payload.gamma,
                support_vectors=support.reshape(-1, payload.n_features),
                dual_coefs=np.asarray(payload.dual_coefs, dtype=float),
                bias=payload.bias,
            )
        case PerSubjectPayload():
            models = {}
            for sid, sub in payload.models.items():
                model = from_payload(sub)
                if not isinstance(model, LogRegModel | SvmModel):
                    msg = f"Per-subject model of {sid} is not a baseline classifier"
                    raise CheckpointError(msg)
                models[sid] = model
            return PerSubjectModel(models)


def _flat_values(payload: ModelPayload) -> Iterator[list[float] | float]:
    match payload:
        case MtlNetworkPayload():
            layers = [payload.shared]
            for t in payload.tasks:
                layers += [payload.task_layers[t], payload.heads[t]]
            for layer in layers:
                yield layer.weights
                yield layer.biases
        case LogRegPayload():
            yield payload.weights
            yield payload.bias
        case SvmPayload():
            yield payload.support_vectors
            yield payload.dual_coefs
            yield payload.bias
        case PerSubjectPayload():
            for sid in sorted(payload.models):
                yield from _flat_values(payload.models[sid])


def checksum(payload: ModelPayload, feature_mean: list[float], feature_scale: list[float]) -> str:
    """SHA-256 of all parameters as little-endian float64, in payload order."""
    parts = [np.atleast_1d(np.asarray(v, dtype="<f8")) for v in _flat_values(payload)]
    parts += [np.asarray(feature_mean, dtype="<f8"), np.asarray(feature_scale, dtype="<f8")]
    return hashlib.sha256(np.concatenate(parts).tobytes()).hexdigest()


def to_checkpoint(model: TrainedModel, *, dataset: str, seed: int) -> Checkpoint:
    payload = to_payload(model.model)
    if isinstance(payload, MtlNetworkPayload):
        update: dict[str, object] = {}
        if model.train_config is not None:
            update["train_config"] = model.train_config.model_dump()
        if model.log is not None:
            update["best_epoch"] = model.log.best_epoch
            update["epochs_run"] = model.log.epochs_run
        payload = payload.model_copy(update=update)
    mean = model.standardizer.mean.tolist()
    scale = model.standardizer.scale.tolist()
    return Checkpoint(
        model=model.kind,
        dataset=dataset,
        seed=seed,
        hyperparameters=dict(model.params),
        feature_mean=mean,
        feature_scale=scale,
        payload=payload,
        checksum=checksum(payload, mean, scale),
    )


def from_checkpoint(ckpt: Checkpoint) -> TrainedModel:
    """Rebuild the trained model after verifying the checksum.

    Raises
    ------
    CheckpointError
        If the stored checksum does not match the parameters.

    """
    expected = checksum(ckpt.payload, ckpt.feature_mean, ckpt.feature_scale)
    if expected != ckpt.checksum:
        msg = f"Checkpoint checksum mismatch for {ckpt.model}: stored {ckpt.checksum}"
        raise CheckpointError(msg)
    standardizer = Standardizer(
        mean=np.asarray(ckpt.feature_mean, dtype=float),
        scale=np.asarray(ckpt.feature_scale, dtype=float),
    )
    return TrainedModel(
        ckpt.model, dict(ckpt.hyperparameters), standardizer, from_payload(ckpt.payload)
    )


def save_checkpoint(model: TrainedModel, path: Path, *, dataset: str, seed: int) -> Path:
    """Write ``model`` as a JSON checkpoint at ``path``."""
    ckpt = to_checkpoint(model, dataset=dataset, seed=seed)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(ckpt.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("Wrote %s checkpoint to %s", model.kind, path)
    return path


def load_checkpoint(path: Path) -> tuple[Checkpoint, TrainedModel]:
    """Read and verify a checkpoint.

    Raises
    ------
    CheckpointError
        If the file is not a valid checkpoint or its checksum does not match.

    """
    try:
        ckpt = Checkpoint.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        msg = f"Invalid checkpoint {path}: {e.error_count()} validation error(s)"
        raise CheckpointError(msg) from e
    return ckpt, from_checkpoint(ckpt)
