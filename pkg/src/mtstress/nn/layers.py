"""Dense layers and weight initialization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mtstress.nn.activations import ELU_ALPHA, Activation, activate
from mtstress.nn.errors import NetworkError


def glorot_init(shape: tuple[int, int], rng: np.random.Generator) -> np.ndarray:
    """Glorot-uniform weights for a layer of shape ``(fan_out, fan_in)``.

    Entries are uniform in ``±sqrt(6 / (fan_in + fan_out))``.
    """
    fan_out, fan_in = shape
    if fan_out <= 0 or fan_in <= 0:
        msg = f"Layer dimensions must be positive, got {shape}"
        raise NetworkError(msg)
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


@dataclass
class DenseLayer:
    """Fully connected layer ``activation(x @ weights.T + biases)``.

    Attributes
    ----------
    weights : np.ndarray
        Weight matrix of shape (out, in)
    biases : np.ndarray
        Bias vector of shape (out,)
    activation : Activation
        Elementwise activation after the affine map

    """

    weights: np.ndarray
    biases: np.ndarray
    activation: Activation

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float)
        self.biases = np.asarray(self.biases, dtype=float)
        self.activation = Activation(self.activation)
        if self.weights.ndim != 2 or self.biases.shape != (self.weights.shape[0],):  # noqa: PLR2004
            msg = (
                f"Inconsistent layer shapes: weights {self.weights.shape}, "
                f"biases {self.biases.shape}"
            )
            raise NetworkError(msg)
        if not (np.isfinite(self.weights).all() and np.isfinite(self.biases).all()):
            msg = "Layer parameters must be finite"
            raise NetworkError(msg)

    @classmethod
    def create(
        cls,
        n_in: int,
        n_out: int,
        activation: Activation,
        rng: np.random.Generator,
    ) -> DenseLayer:
        """Glorot-initialised layer with zero biases."""
        return cls(glorot_init((n_out, n_in), rng), np.zeros(n_out), activation)

    @property
    def n_in(self) -> int:
        return self.weights.shape[1]

    @property
    def n_out(self) -> int:
        return self.weights.shape[0]

    def forward(
        self, x: np.ndarray, alpha: float = ELU_ALPHA
    ) -> tuple[np.ndarray, np.ndarray]:
        """Return pre-activations and activations for a batch ``x`` of shape (n, in)."""
        z = x @ self.weights.T + self.biases
        return z, activate(z, self.activation, alpha)

    def copy(self) -> DenseLayer:
        return DenseLayer(self.weights.copy(), self.biases.copy(), self.activation)
