"""Exceptions raised by the baseline classifiers."""

import numpy as np


class BaselineError(Exception):
    """Base exception for baseline classifier errors."""


class SingleClassDataError(BaselineError):
    """Raised when training labels contain only one class."""


class UntrainedModelError(BaselineError):
    """Raised when predicting with a model that has no fitted parameters."""


class DimMismatchError(BaselineError):
    """Raised when vectors of different dimension are combined."""


class NoConvergenceError(BaselineError):
    """Raised when an iterative solver hits its iteration cap."""


def require_two_classes(y: np.ndarray) -> None:
    """Raise SingleClassDataError unless ``y`` holds both classes."""
    classes = np.unique(y)
    if len(classes) < 2:  # noqa: PLR2004
        msg = f"Training labels contain a single class: {classes.tolist()}"
        raise SingleClassDataError(msg)
