"""Exceptions raised by the network engine."""


class NetworkError(Exception):
    """Base exception for network construction and training errors."""


class UnknownTaskError(NetworkError):
    """Raised when a task id has no task layer and head in the network."""

    def __init__(self, task_id: str) -> None:
        self.task_id = task_id
        super().__init__(f"Unknown task: {task_id}")


class ShapeMismatchError(NetworkError):
    """Raised when a gradient does not match its parameter."""


class TaskTooSmallError(NetworkError):
    """Raised when a task has too few windows to train on."""

    def __init__(self, task_id: str, n_windows: int, minimum: int) -> None:
        self.task_id = task_id
        self.n_windows = n_windows
        super().__init__(
            f"Task {task_id} has {n_windows} training windows, need at least {minimum}"
        )


class NonFiniteLossError(NetworkError):
    """Raised when the training loss diverges."""

    def __init__(self, epoch: int) -> None:
        self.epoch = epoch
        super().__init__(f"Training loss became non-finite in epoch {epoch}")
