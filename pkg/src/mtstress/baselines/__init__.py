"""Reference classifiers: logistic regression and linear/RBF SVMs."""

from mtstress.baselines.errors import (
    BaselineError,
    DimMismatchError,
    NoConvergenceError,
    SingleClassDataError,
    UntrainedModelError,
)
from mtstress.baselines.logreg import LogRegConfig, LogRegModel, train_logreg
from mtstress.baselines.svm import (
    Kernel,
    SvmConfig,
    SvmModel,
    dual_objective,
    kernel_matrix,
    rbf_kernel,
    train_svm,
)

__all__ = [
    "BaselineError",
    "DimMismatchError",
    "Kernel",
    "LogRegConfig",
    "LogRegModel",
    "NoConvergenceError",
    "SingleClassDataError",
    "SvmConfig",
    "SvmModel",
    "UntrainedModelError",
    "dual_objective",
    "kernel_matrix",
    "rbf_kernel",
    "train_logreg",
    "train_svm",
]
