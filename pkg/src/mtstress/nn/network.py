"""Hard parameter sharing network: one shared layer, one tower per task."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from mtstress.features.dataset import N_FEATURES
from mtstress.nn.activations import ELU_ALPHA, Activation, elu_grad
from mtstress.nn.errors import NetworkError, UnknownTaskError
from mtstress.nn.layers import DenseLayer

if TYPE_CHECKING:
    from collections.abc import Iterable

SHARED_UNITS = 200
TASK_UNITS = 50
PROB_CLIP = 1e-7

ParamKey = tuple[str, ...]
"""Parameter address, e.g. ``("shared", "weights")`` or ``("head", task_id, "biases")``."""

Params = dict[ParamKey, np.ndarray]


@dataclass
class MtlNetwork:
    """Shared dense layer feeding a task layer and a sigmoid head per task.

    Attributes
    ----------
    shared : DenseLayer
        Input to shared representation (16 -> 200, elu)
    task_layers : dict[str, DenseLayer]
        Task-specific hidden layer per task id (200 -> 50, elu)
    heads : dict[str, DenseLayer]
        Task-specific output per task id (50 -> 1, sigmoid)
    elu_alpha : float
        Alpha of every elu activation

    """

    shared: DenseLayer
    task_layers: dict[str, DenseLayer] = field(default_factory=dict)
    heads: dict[str, DenseLayer] = field(default_factory=dict)
    elu_alpha: float = ELU_ALPHA

    def __post_init__(self) -> None:
        if set(self.task_layers) != set(self.heads):
            msg = "Task layers and heads must have the same task ids"
            raise NetworkError(msg)
        for task_id in self.task_layers:
            tower, head = self.task_layers[task_id], self.heads[task_id]
            if tower.n_in != self.shared.n_out or head.n_in != tower.n_out or head.n_out != 1:
                msg = f"Inconsistent layer shapes for task {task_id}"
                raise NetworkError(msg)

    @classmethod
    def build(
        cls,
        task_ids: Iterable[str],
        rng: np.random.Generator,
        *,
        n_inputs: int = N_FEATURES,
        shared_units: int = SHARED_UNITS,
        task_units: int = TASK_UNITS,
        elu_alpha: float = ELU_ALPHA,
    ) -> MtlNetwork:
        """Glorot-initialised network with one tower per task id, in the given order."""
        shared = DenseLayer.create(n_inputs, shared_units, Activation.ELU, rng)
        task_layers: dict[str, DenseLayer] = {}
        heads: dict[str, DenseLayer] = {}
        for task_id in task_ids:
            task_layers[task_id] = DenseLayer.create(
                shared_units, task_units, Activation.ELU, rng
            )
            heads[task_id] = DenseLayer.create(task_units, 1, Activation.SIGMOID, rng)
        if not task_layers:
            msg = "A network needs at least one task"
            raise NetworkError(msg)
        return cls(shared, task_layers, heads, elu_alpha)

    @property
    def task_ids(self) -> list[str]:
        return list(self.task_layers)

    def require_task(self, task_id: str) -> None:
        if task_id not in self.task_layers:
            raise UnknownTaskError(task_id)

    def layer_outputs(self, X: np.ndarray, task_id: str) -> list[np.ndarray]:
        """Inputs, pre-activations and activations of every layer: a0, z1, a1, z2, a2, z3, p."""
        self.require_task(task_id)
        z1, a1 = self.shared.forward(X, self.elu_alpha)
        z2, a2 = self.task_layers[task_id].forward(a1, self.elu_alpha)
        z3, p = self.heads[task_id].forward(a2, self.elu_alpha)
        return [X, z1, a1, z2, a2, z3, p[:, 0]]

    def predict_proba(self, X: np.ndarray, task_id: str) -> np.ndarray:
        """Stress probability for each row of ``X`` through ``task_id``'s tower."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return self.layer_outputs(X, task_id)[-1]

    def forward(self, x: np.ndarray, task_id: str) -> float | np.ndarray:
        """Probability for one window (1-D ``x``) or a batch (2-D ``x``).

        Raises
        ------
        UnknownTaskError
            If ``task_id`` is not a task of this network.

        """
        x = np.asarray(x, dtype=float)
        p = self.predict_proba(x, task_id)
        return float(p[0]) if x.ndim == 1 else p

    def parameters(self, task_id: str | None = None) -> Params:
        """References to the parameter arrays of the shared layer and one or all towers."""
        params: Params = {
            ("shared", "weights"): self.shared.weights,
            ("shared", "biases"): self.shared.biases,
        }
        task_ids = self.task_ids if task_id is None else [task_id]
        for tid in task_ids:
            self.require_task(tid)
            for part, layer in (("task", self.task_layers[tid]), ("head", self.heads[tid])):
                params[part, tid, "weights"] = layer.weights
                params[part, tid, "biases"] = layer.biases
        return params

    def snapshot(self) -> Params:
        """Copies of all parameters."""
        return {key: value.copy() for key, value in self.parameters().items()}

    def restore(self, snapshot: Params) -> None:
        """Copy ``snapshot`` values into the network's parameter arrays."""
        for key, value in self.parameters().items():
            np.copyto(value, snapshot[key])

    def copy(self) -> MtlNetwork:
        return MtlNetwork(
            self.shared.copy(),
            {tid: layer.copy() for tid, layer in self.task_layers.items()},
            {tid: layer.copy() for tid, layer in self.heads.items()},
            self.elu_alpha,
        )


def l2_penalty(net: MtlNetwork, task_id: str, l2_lambda: float) -> float:
    """``l2_lambda`` times the squared norms of the task layer and head weights.

    Shared weights and all biases are not penalised.
    """
    net.require_task(task_id)
    task_w = net.task_layers[task_id].weights
    head_w = net.heads[task_id].weights
    return float(l2_lambda * (np.sum(task_w**2) + np.sum(head_w**2)))


def cross_entropy(p: np.ndarray | float, y: np.ndarray | float) -> float:
    """Mean binary cross-entropy with ``p`` clipped to ``[1e-7, 1 - 1e-7]``."""
    p = np.clip(np.asarray(p, dtype=float), PROB_CLIP, 1.0 - PROB_CLIP)
    y = np.asarray(y, dtype=float)
    return float(np.mean(-(y * np.log(p) + (1.0 - y) * np.log1p(-p))))


def bce_loss(
    p: np.ndarray | float,
    y: np.ndarray | float,
    net: MtlNetwork,
    task_id: str,
    l2_lambda: float,
) -> float:
    """Mean binary cross-entropy of ``p`` against ``y`` plus the task's L2 penalty.

    Examples
    --------
    >>> net = MtlNetwork.build(["a"], np.random.default_rng(0))
    >>> round(bce_loss(0.5, 1, net, "a", 0.0), 6)
    0.693147

    """
    return cross_entropy(p, y) + l2_penalty(net, task_id, l2_lambda)


def backward(
    net: MtlNetwork,
    X: np.ndarray,
    y: np.ndarray,
    task_id: str,
    l2_lambda: float,
) -> tuple[float, Params]:
    """Loss and exact gradients for a batch routed through ``task_id``.

    The output gradient is ``p - y`` per window; probability clipping only guards
    the logarithm in the loss value.

    Returns
    -------
    tuple[float, Params]
        Batch loss and gradients keyed like ``net.parameters(task_id)``. Parameters
        of other tasks are absent, their gradient being zero.

    Raises
    ------
    UnknownTaskError
        If ``task_id`` is not a task of this network.

    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    a0, z1, a1, z2, a2, _, p = net.layer_outputs(X, task_id)
    tower, head = net.task_layers[task_id], net.heads[task_id]
    n = len(y)

    dz3 = ((p - y) / n)[:, None]
    dz2 = (dz3 @ head.weights) * elu_grad(z2, net.elu_alpha)
    dz1 = (dz2 @ tower.weights) * elu_grad(z1, net.elu_alpha)

    grads: Params = {
        ("shared", "weights"): dz1.T @ a0,
        ("shared", "biases"): dz1.sum(axis=0),
        ("task", task_id, "weights"): dz2.T @ a1 + 2.0 * l2_lambda * tower.weights,
        ("task", task_id, "biases"): dz2.sum(axis=0),
        ("head", task_id, "weights"): dz3.T @ a2 + 2.0 * l2_lambda * head.weights,
        ("head", task_id, "biases"): dz3.sum(axis=0),
    }
    return bce_loss(p, y, net, task_id, l2_lambda), grads
