"""Dense neural network engine with hard parameter sharing across tasks."""

from mtstress.nn.activations import Activation, elu, elu_grad, sigmoid
from mtstress.nn.errors import (
    NetworkError,
    NonFiniteLossError,
    ShapeMismatchError,
    TaskTooSmallError,
    UnknownTaskError,
)
from mtstress.nn.layers import DenseLayer, glorot_init
from mtstress.nn.network import (
    MtlNetwork,
    backward,
    bce_loss,
    cross_entropy,
    l2_penalty,
)
from mtstress.nn.optim import AdamState, adam_step
from mtstress.nn.training import TrainConfig, TrainingLog, train_mtl

__all__ = [
    "Activation",
    "AdamState",
    "DenseLayer",
    "MtlNetwork",
    "NetworkError",
    "NonFiniteLossError",
    "ShapeMismatchError",
    "TaskTooSmallError",
    "TrainConfig",
    "TrainingLog",
    "UnknownTaskError",
    "adam_step",
    "backward",
    "bce_loss",
    "cross_entropy",
    "elu",
    "elu_grad",
    "glorot_init",
    "l2_penalty",
    "sigmoid",
    "train_mtl",
]
