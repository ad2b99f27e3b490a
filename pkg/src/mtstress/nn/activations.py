"""Activation functions and their derivatives."""

from enum import StrEnum

import numpy as np

ELU_ALPHA = 1.0


class Activation(StrEnum):
    """Activation applied after a dense layer's affine map."""

    ELU = "elu"
    SIGMOID = "sigmoid"
    IDENTITY = "identity"


def elu(x: np.ndarray | float, alpha: float = ELU_ALPHA) -> np.ndarray:
    """Exponential linear unit: ``alpha * (exp(x) - 1)`` for x < 0, else x.

    Examples
    --------
    >>> float(elu(2.5))
    2.5
    >>> round(float(elu(-1.0)), 6)
    -0.632121

    """
    x = np.asarray(x, dtype=float)
    # expm1 on the clipped input keeps large positive x from overflowing
    return np.where(x < 0, alpha * np.expm1(np.minimum(x, 0.0)), x)


def elu_grad(x: np.ndarray | float, alpha: float = ELU_ALPHA) -> np.ndarray:
    """Derivative of elu with respect to its input."""
    x = np.asarray(x, dtype=float)
    return np.where(x < 0, alpha * np.exp(np.minimum(x, 0.0)), 1.0)


def sigmoid(x: np.ndarray | float) -> np.ndarray:
    """Logistic function, stable for large ``|x|``."""
    x = np.asarray(x, dtype=float)
    z = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + z), z / (1.0 + z))


def activate(x: np.ndarray, activation: Activation, alpha: float = ELU_ALPHA) -> np.ndarray:
    """Apply ``activation`` elementwise."""
    match activation:
        case Activation.ELU:
            return elu(x, alpha)
        case Activation.SIGMOID:
            return sigmoid(x)
        case Activation.IDENTITY:
            return np.asarray(x, dtype=float)
