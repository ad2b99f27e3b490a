"""Soft-margin SVM solved in the dual by sequential minimal optimization."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mtstress.baselines.errors import (
    DimMismatchError,
    NoConvergenceError,
    UntrainedModelError,
    require_two_classes,
)

logger = logging.getLogger(__name__)

# Curvature floor for pairs of identical points
MIN_CURVATURE = 1e-12
# Dual coefficients below this are treated as zero
ALPHA_EPS = 1e-12


class Kernel(StrEnum):
    LINEAR = "linear"
    RBF = "rbf"


class SvmConfig(BaseModel):
    """Kernel, box constraint and solver settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kernel: Kernel = Kernel.LINEAR
    C: float = Field(default=1.0, gt=0)
    gamma: float = Field(default=0.1, gt=0)
    tol: float = Field(default=1e-3, gt=0)
    max_passes: int = Field(default=10_000, ge=1)


def rbf_kernel(a: np.ndarray, b: np.ndarray, gamma: float) -> float:
    """``exp(-gamma * ||a - b||^2)``.

    Examples
    --------
    >>> round(rbf_kernel(np.array([0.0]), np.array([1.0]), 1.0), 6)
    0.367879

    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        msg = f"Cannot compare vectors of shapes {a.shape} and {b.shape}"
        raise DimMismatchError(msg)
    return float(np.exp(-gamma * np.sum((a - b) ** 2)))


def kernel_matrix(
    A: np.ndarray, B: np.ndarray, kernel: Kernel, gamma: float = 0.1
) -> np.ndarray:
    """Gram matrix ``K[i, j] = k(A[i], B[j])``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape[1] != B.shape[1]:
        msg = f"Cannot compare {A.shape[1]}-d and {B.shape[1]}-d vectors"
        raise DimMismatchError(msg)
    inner = A @ B.T
    if kernel is Kernel.LINEAR:
        return inner
    sq_dist = np.sum(A**2, axis=1)[:, None] + np.sum(B**2, axis=1)[None, :] - 2.0 * inner
    return np.exp(-gamma * np.maximum(sq_dist, 0.0))


@dataclass
class SvmModel:
    """Support vectors with their dual coefficients ``alpha_i * y_i``.

    ``support_vectors`` is None until trained.
    """

    kernel: Kernel = Kernel.LINEAR
    C: float = 1.0
    gamma: float = 0.1
    support_vectors: np.ndarray | None = None
    dual_coefs: np.ndarray | None = None
    bias: float = 0.0

    def require_trained(self) -> tuple[np.ndarray, np.ndarray]:
        if self.support_vectors is None or self.dual_coefs is None:
            msg = "SVM model is not trained"
            raise UntrainedModelError(msg)
        return self.support_vectors, self.dual_coefs

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        """``sum_i alpha_i y_i K(x_i, x) + b`` for each row of ``X``."""
        support, coefs = self.require_trained()
        K = kernel_matrix(X, support, self.kernel, self.gamma)
        return K @ coefs + self.bias

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Class 1 where the decision value is non-negative."""
        return (self.decision_function(X) >= 0).astype(int)


def signed_labels(y: np.ndarray) -> np.ndarray:
    """Map labels in {0, 1} or {-1, +1} to {-1, +1}."""
    return np.where(np.asarray(y) > 0, 1.0, -1.0)


def train_svm(X: np.ndarray, y: np.ndarray, cfg: SvmConfig | None = None) -> SvmModel:
    """Solve the soft-margin dual with SMO on the maximal violating pair.

    Each iteration picks the pair that violates the optimality conditions most
    (largest gap between ``-y_i G_i`` over the up set and the low set, ``G`` being the
    dual gradient) and optimises it analytically inside the box ``[0, C]``. Iteration
    stops when the gap falls below ``cfg.tol``. The bias is the mean over free
    support vectors, or the midpoint of the final gap when no vector is free.

    Labels may be given in {0, 1} or {-1, +1}.

    Raises
    ------
    SingleClassDataError
        If ``y`` holds only one class.
    NoConvergenceError
        If the gap is still above tolerance after ``max_passes * n`` iterations.

    """
    cfg = cfg or SvmConfig()
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = signed_labels(y)
    require_two_classes(y)
    n = len(y)
    C = cfg.C

    K = kernel_matrix(X, X, cfg.kernel, cfg.gamma)
    Q = (y[:, None] * y[None, :]) * K
    diag = np.diag(K)
    alpha = np.zeros(n)
    grad = -np.ones(n)

    max_iter = cfg.max_passes * n
    for iteration in range(max_iter):
        score = -y * grad
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
        i = int(np.argmax(np.where(up, score, -np.inf)))
        j = int(np.argmin(np.where(low, score, np.inf)))
        gap_high, gap_low = score[i], score[j]
        if gap_high - gap_low < cfg.tol:
            break

        curvature = max(diag[i] + diag[j] - 2.0 * K[i, j], MIN_CURVATURE)
        step = (gap_high - gap_low) / curvature
        step = min(
            step,
            C - alpha[i] if y[i] > 0 else alpha[i],
            alpha[j] if y[j] > 0 else C - alpha[j],
        )
        delta_i, delta_j = y[i] * step, -y[j] * step
        alpha[i] = np.clip(alpha[i] + delta_i, 0.0, C)
        alpha[j] = np.clip(alpha[j] + delta_j, 0.0, C)
        grad += Q[:, i] * delta_i + Q[:, j] * delta_j
    else:
        msg = f"SMO did not reach tolerance {cfg.tol} in {max_iter} iterations"
        raise NoConvergenceError(msg)

    score = -y * grad
    free = (alpha > ALPHA_EPS) & (alpha < C - ALPHA_EPS)
    bias = float(score[free].mean()) if free.any() else float((gap_high + gap_low) / 2)

    support = alpha > ALPHA_EPS
    logger.debug(
        "SMO converged after %d iterations: %d support vectors, %d free",
        iteration,
        int(support.sum()),
        int(free.sum()),
    )
    return SvmModel(
        kernel=cfg.kernel,
        C=C,
        gamma=cfg.gamma,
        support_vectors=X[support],
        dual_coefs=alpha[support] * y[support],
        bias=bias,
    )


def dual_objective(model: SvmModel) -> float:
    """Dual objective ``sum(alpha) - 1/2 sum_ij a_i a_j y_i y_j K_ij`` at the solution."""
    support, coefs = model.require_trained()
    K = kernel_matrix(support, support, model.kernel, model.gamma)
    return float(np.abs(coefs).sum() - 0.5 * coefs @ K @ coefs)


def predict(model: SvmModel, x: np.ndarray) -> tuple[int, float]:
    """Class and decision value for one window; a zero decision maps to class 1."""
    score = float(model.decision_function(x)[0])
    return int(score >= 0), score
