"""L2-regularised logistic regression trained with full-batch Adam."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mtstress.baselines.errors import (
    DimMismatchError,
    NoConvergenceError,
    UntrainedModelError,
    require_two_classes,
)
from mtstress.nn.activations import sigmoid
from mtstress.nn.network import cross_entropy
from mtstress.nn.optim import AdamState, adam_step

logger = logging.getLogger(__name__)


class LogRegConfig(BaseModel):
    """Solver settings for logistic regression."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lr: float = Field(default=0.05, gt=0)
    max_iter: int = Field(default=5000, ge=1)
    tol: float = Field(default=1e-6, gt=0)
    strict: bool = False
    """Raise NoConvergenceError instead of warning when ``max_iter`` is reached."""


@dataclass
class LogRegModel:
    """Logistic regression parameters; ``weights`` is None until trained."""

    weights: np.ndarray | None = None
    bias: float = 0.0
    l2_lambda: float = 0.0

    def require_trained(self) -> np.ndarray:
        if self.weights is None:
            msg = "Logistic regression model is not trained"
            raise UntrainedModelError(msg)
        return self.weights

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """Stress probability ``sigmoid(w.x + b)`` for each row of ``X``."""
        weights = self.require_trained()
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != len(weights):
            msg = f"Model has {len(weights)} inputs, got {X.shape[1]}"
            raise DimMismatchError(msg)
        return sigmoid(X @ weights + self.bias)

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Class 1 where the probability is at least 0.5."""
        return (self.decision_function(X) >= 0.5).astype(int)  # noqa: PLR2004


def train_logreg(
    X: np.ndarray,
    y: np.ndarray,
    l2_lambda: float,
    cfg: LogRegConfig | None = None,
) -> LogRegModel:
    """Minimise mean cross-entropy plus ``l2_lambda * ||w||^2`` from zero weights.

    Full-batch Adam runs until the gradient norm drops below ``cfg.tol`` or
    ``cfg.max_iter`` updates were made. The bias is not penalised. Training has no
    randomness.

    Raises
    ------
    SingleClassDataError
        If ``y`` holds only one class.

    """
    cfg = cfg or LogRegConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    require_two_classes(y)

    params = {"weights": np.zeros(X.shape[1]), "bias": np.zeros(1)}
    state = AdamState(lr=cfg.lr)
    n = len(y)
    for _ in range(cfg.max_iter):
        residual = sigmoid(X @ params["weights"] + params["bias"][0]) - y
        grads = {
            "weights": X.T @ residual / n + 2.0 * l2_lambda * params["weights"],
            "bias": np.array([residual.mean()]),
        }
        norm = np.sqrt(sum(float(np.sum(g**2)) for g in grads.values()))
        if norm < cfg.tol:
            break
        adam_step(state, params, grads)
    else:
        msg = f"Logistic regression did not reach tolerance {cfg.tol} in {cfg.max_iter} steps"
        if cfg.strict:
            raise NoConvergenceError(msg)
        logger.debug(msg)

    model = LogRegModel(params["weights"], float(params["bias"][0]), l2_lambda)
    logger.debug(
        "Logistic regression after %d steps: loss %.5f",
        state.t,
        cross_entropy(model.decision_function(X), y),
    )
    return model


def predict(model: LogRegModel, x: np.ndarray) -> tuple[int, float]:
    """Class and probability for one window; probability 0.5 maps to class 1."""
    score = float(model.decision_function(x)[0])
    return int(score >= 0.5), score  # noqa: PLR2004
