"""Alternating-task training loop with early stopping."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mtstress.nn.errors import NetworkError, NonFiniteLossError, TaskTooSmallError
from mtstress.nn.network import MtlNetwork, backward, cross_entropy
from mtstress.nn.optim import AdamState, adam_step

if TYPE_CHECKING:
    from mtstress.features.dataset import WindowedDataset

logger = logging.getLogger(__name__)


class TrainConfig(BaseModel):
    """Optimizer, regularisation and stopping settings of one training run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lr: float = Field(default=0.001, gt=0)
    beta1: float = Field(default=0.9, gt=0, lt=1)
    beta2: float = Field(default=0.999, gt=0, lt=1)
    eps: float = Field(default=1e-8, gt=0)
    l2_lambda: float = Field(default=1e-3, ge=0)
    batch_size: int = Field(default=32, ge=1)
    max_epochs: int = Field(default=500, ge=1)
    patience: int = Field(default=10, ge=1)
    val_fraction: float = Field(default=0.2, gt=0, lt=1)
    seed: int = Field(default=0, ge=0)
    min_task_windows: int = Field(default=5, ge=2)


@dataclass
class TrainingLog:
    """Per-epoch losses of a run and where it stopped."""

    train_loss: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    best_epoch: int = -1
    stopped_early: bool = False

    @property
    def epochs_run(self) -> int:
        return len(self.val_loss)

    @property
    def best_val_loss(self) -> float:
        return self.val_loss[self.best_epoch] if self.val_loss else math.inf


@dataclass(frozen=True)
class _TaskData:
    X_train: np.ndarray
    y_train: np.ndarray
    X_val: np.ndarray
    y_val: np.ndarray


def _split_tasks(
    net: MtlNetwork, data: WindowedDataset, cfg: TrainConfig, rng: np.random.Generator
) -> dict[str, _TaskData]:
    tasks: dict[str, _TaskData] = {}
    for task_id, windows in data.subjects.items():
        net.require_task(task_id)
        n = len(windows)
        if n < cfg.min_task_windows:
            raise TaskTooSmallError(task_id, n, cfg.min_task_windows)
        order = rng.permutation(n)
        n_val = min(max(1, round(cfg.val_fraction * n)), n - 1)
        val, train = order[:n_val], order[n_val:]
        tasks[task_id] = _TaskData(
            windows.X[train], windows.y[train], windows.X[val], windows.y[val]
        )
    return tasks


def _mean_loss(net: MtlNetwork, tasks: dict[str, _TaskData], *, validation: bool) -> float:
    losses = []
    for task_id, task in tasks.items():
        X, y = (task.X_val, task.y_val) if validation else (task.X_train, task.y_train)
        losses.append(cross_entropy(net.predict_proba(X, task_id), y))
    return float(np.mean(losses))


def train_mtl(
    net: MtlNetwork, data: WindowedDataset, cfg: TrainConfig
) -> tuple[MtlNetwork, TrainingLog]:
    """Train ``net`` in place on every subject of ``data``, one task per subject.

    Each step samples a task uniformly at random, draws a mini-batch of at most
    ``batch_size`` of that task's training windows and applies one Adam step to the
    shared layer and that task's tower. An epoch has
    ``ceil(total training windows / batch_size)`` steps. After every epoch the mean
    validation cross-entropy over tasks is computed on a held-out ``val_fraction``
    of each task; training stops after ``patience`` epochs without improvement and
    the parameters of the best epoch are restored.

    Returns
    -------
    tuple[MtlNetwork, TrainingLog]
        The trained network (the same object) and its training log

    Raises
    ------
    TaskTooSmallError
        If a task has fewer than ``min_task_windows`` windows.
    UnknownTaskError
        If a subject of ``data`` has no tower in ``net``.
    NonFiniteLossError
        If the loss diverges.

    """
    if not data.subjects:
        msg = "No tasks to train on"
        raise NetworkError(msg)

    rng = np.random.default_rng(cfg.seed)
    tasks = _split_tasks(net, data, cfg, rng)
    task_ids = list(tasks)
    n_train = sum(len(t.y_train) for t in tasks.values())
    steps_per_epoch = max(1, math.ceil(n_train / cfg.batch_size))
    state = AdamState(lr=cfg.lr, beta1=cfg.beta1, beta2=cfg.beta2, eps=cfg.eps)

    log = TrainingLog()
    best = net.snapshot()
    best_loss = math.inf
    stale = 0
    for epoch in range(cfg.max_epochs):
        for _ in range(steps_per_epoch):
            task_id = task_ids[rng.integers(len(task_ids))]
            task = tasks[task_id]
            batch = rng.choice(
                len(task.y_train), size=min(cfg.batch_size, len(task.y_train)), replace=False
            )
            loss, grads = backward(
                net, task.X_train[batch], task.y_train[batch], task_id, cfg.l2_lambda
            )
            if not math.isfinite(loss):
                raise NonFiniteLossError(epoch)
            adam_step(state, net.parameters(task_id), grads)

        train_loss = _mean_loss(net, tasks, validation=False)
        val_loss = _mean_loss(net, tasks, validation=True)
        if not (math.isfinite(train_loss) and math.isfinite(val_loss)):
            raise NonFiniteLossError(epoch)
        log.train_loss.append(train_loss)
        log.val_loss.append(val_loss)
        logger.debug("Epoch %d: train %.5f, validation %.5f", epoch, train_loss, val_loss)

        if val_loss < best_loss:
            best_loss = val_loss
            best = net.snapshot()
            log.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale >= cfg.patience:
                log.stopped_early = True
                break

    net.restore(best)
    logger.info(
        "Trained %d task(s) for %d epochs, best epoch %d (validation %.5f)%s",
        len(task_ids),
        log.epochs_run,
        log.best_epoch,
        best_loss,
        ", stopped early" if log.stopped_early else "",
    )
    return net, log
