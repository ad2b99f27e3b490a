"""Evaluation protocol: splits, cross-validation, metrics and reports."""

from mtstress.evaluation.cv import CvResult, GridPointScores, run_cv
from mtstress.evaluation.errors import (
    ConsistencyError,
    EmptyMatrixError,
    EvaluationError,
    FoldError,
    SubjectTooSmallError,
    TaskMissingHeadError,
    UnsupportedFormatError,
)
from mtstress.evaluation.families import (
    Hyperparams,
    ModelKind,
    PerSubjectModel,
    TrainedModel,
    fit_model,
    param_grid,
)
from mtstress.evaluation.harness import (
    MetricsReport,
    ModelScores,
    SubjectScore,
    evaluate_all,
)
from mtstress.evaluation.metrics import ConfusionMatrix, cohen_kappa, f1_score
from mtstress.evaluation.report import (
    ReportFormat,
    parse_formats,
    read_report,
    render_markdown,
    render_report,
)
from mtstress.evaluation.splits import SplitManifest, SubjectSplit, make_split

__all__ = [
    "ConfusionMatrix",
    "ConsistencyError",
    "CvResult",
    "EmptyMatrixError",
    "EvaluationError",
    "FoldError",
    "GridPointScores",
    "Hyperparams",
    "MetricsReport",
    "ModelKind",
    "ModelScores",
    "PerSubjectModel",
    "ReportFormat",
    "SplitManifest",
    "SubjectScore",
    "SubjectTooSmallError",
    "TaskMissingHeadError",
    "TrainedModel",
    "UnsupportedFormatError",
    "cohen_kappa",
    "evaluate_all",
    "f1_score",
    "fit_model",
    "make_split",
    "param_grid",
    "parse_formats",
    "read_report",
    "render_markdown",
    "render_report",
]
