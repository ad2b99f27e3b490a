"""Adam optimizer over keyed parameter arrays."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from mtstress.nn.errors import ShapeMismatchError

if TYPE_CHECKING:
    from collections.abc import Hashable, Mapping


@dataclass
class AdamState:
    """Moment accumulators and step counter of an Adam optimizer.

    Accumulators are created lazily the first time a parameter receives a gradient,
    so towers of tasks that were never sampled carry no state. The step counter is
    global and drives bias correction for every parameter.
    """

    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    t: int = 0
    m: dict[Hashable, np.ndarray] = field(default_factory=dict)
    v: dict[Hashable, np.ndarray] = field(default_factory=dict)


def adam_step(
    state: AdamState,
    params: Mapping[Hashable, np.ndarray],
    grads: Mapping[Hashable, np.ndarray],
) -> None:
    """Apply one bias-corrected Adam update in place.

    Only parameters present in ``grads`` are touched; ``params`` arrays are
    modified in place and the step counter of ``state`` is incremented.

    Raises
    ------
    ShapeMismatchError
        If a gradient has no parameter or a different shape.

    Examples
    --------
    >>> theta = {"w": np.array([0.0])}
    >>> adam_step(AdamState(), theta, {"w": np.array([1.0])})
    >>> round(float(theta["w"][0]), 6)
    -0.001

    """
    for key, grad in grads.items():
        if key not in params or params[key].shape != grad.shape:
            shape = params[key].shape if key in params else None
            msg = f"Gradient for {key} has shape {grad.shape}, parameter has {shape}"
            raise ShapeMismatchError(msg)

    state.t += 1
    correction1 = 1.0 - state.beta1**state.t
    correction2 = 1.0 - state.beta2**state.t
    for key, grad in grads.items():
        m = state.m.setdefault(key, np.zeros_like(grad))
        v = state.v.setdefault(key, np.zeros_like(grad))
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad**2
        param = params[key]
        param -= state.lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)
