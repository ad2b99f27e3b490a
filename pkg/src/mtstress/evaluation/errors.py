"""Exceptions raised by the evaluation protocol."""


class EvaluationError(Exception):
    """Base exception for splitting, cross-validation and reporting errors."""


class SubjectTooSmallError(EvaluationError):
    """Raised when a subject has too few windows to split."""

    def __init__(self, subject_id: str, n_windows: int, minimum: int) -> None:
        self.subject_id = subject_id
        self.n_windows = n_windows
        super().__init__(
            f"Subject {subject_id} has {n_windows} windows, need at least {minimum}"
        )


class EmptyMatrixError(EvaluationError):
    """Raised when a metric needs at least one evaluated window."""


class FoldError(EvaluationError):
    """Raised when training fails inside a cross-validation fold."""

    def __init__(self, fold: int, params: dict[str, float], cause: Exception) -> None:
        self.fold = fold
        self.params = params
        super().__init__(f"Fold {fold} with {params} failed: {cause}")


class TaskMissingHeadError(EvaluationError):
    """Raised when a personalized model has no head for a test subject."""

    def __init__(self, subject_id: str) -> None:
        self.subject_id = subject_id
        super().__init__(f"No trained head for subject {subject_id}")


class ConsistencyError(EvaluationError):
    """Raised when files from different runs or datasets are combined."""


class UnsupportedFormatError(EvaluationError):
    """Raised for an unknown report format."""

    def __init__(self, fmt: str) -> None:
        self.format = fmt
        super().__init__(f"Unsupported report format: {fmt}")
