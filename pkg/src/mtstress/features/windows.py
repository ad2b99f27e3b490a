"""Sliding windows over labeled recordings."""

import logging
import math
from typing import NamedTuple

import numpy as np

from mtstress.dataset.models import (
    UNLABELED,
    LabelSpan,
    SubjectRecording,
    labels_from_spans,
)
from mtstress.features.dataset import FeatureError

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_S = 30.0
DEFAULT_STEP_S = 15.0
# Guards second-to-sample conversions against values like 14.999999999
EPSILON = 1e-9


class BadWindowParamsError(FeatureError):
    """Raised when window length or step are invalid."""


class Window(NamedTuple):
    """One window of a recording.

    ``label`` is None when the window is dropped; ``drop_reason`` then says why:
    "tie" for an exact split between the two classes, "unlabeled" when most of the
    window lies outside every span.
    """

    start_s: float
    hr: np.ndarray
    sc: np.ndarray
    label: int | None
    drop_reason: str | None = None


def window_label(labels: np.ndarray) -> tuple[int | None, str | None]:
    """Mode of per-sample labels, or None with a reason when there is no clear mode."""
    counts = {
        0: int(np.count_nonzero(labels == 0)),
        1: int(np.count_nonzero(labels == 1)),
        UNLABELED: int(np.count_nonzero(labels == UNLABELED)),
    }
    top = max(counts.values())
    winners = [label for label, count in counts.items() if count == top]
    if len(winners) > 1:
        return None, "tie"
    if winners[0] == UNLABELED:
        return None, "unlabeled"
    return winners[0], None


def slide_windows(
    rec: SubjectRecording,
    spans: list[LabelSpan],
    window_len_s: float = DEFAULT_WINDOW_S,
    step_s: float = DEFAULT_STEP_S,
) -> list[Window]:
    """Cut a recording into fixed-length, overlapping windows.

    Windows start at ``t0, t0 + step_s, ...`` and are emitted only when they lie
    fully inside the recording. Boundaries are computed in seconds; a window holds
    the samples whose time falls in ``[start, start + window_len_s)``.

    Parameters
    ----------
    rec : SubjectRecording
        Preprocessed recording
    spans : list[LabelSpan]
        Label spans; samples outside every span are unlabeled
    window_len_s : float
        Window length in seconds
    step_s : float
        Step between window starts, at most ``window_len_s``

    Returns
    -------
    list[Window]
        Every window, including dropped ones

    Raises
    ------
    BadWindowParamsError
        If ``window_len_s <= 0`` or ``step_s`` is not in ``(0, window_len_s]``.

    """
    if window_len_s <= 0 or not 0 < step_s <= window_len_s:
        msg = f"Invalid window {window_len_s} s with step {step_s} s"
        raise BadWindowParamsError(msg)

    fs = rec.sample_rate_hz
    labels = labels_from_spans(rec.times, spans)
    duration = rec.duration_s
    if duration + EPSILON < window_len_s:
        return []
    n_windows = math.floor((duration - window_len_s) / step_s + EPSILON) + 1

    windows: list[Window] = []
    for k in range(n_windows):
        start = k * step_s
        i0 = math.ceil(start * fs - EPSILON)
        i1 = min(math.ceil((start + window_len_s) * fs - EPSILON), rec.n_samples)
        label, reason = window_label(labels[i0:i1])
        windows.append(
            Window(
                start_s=rec.t0 + start,
                hr=rec.hr[i0:i1],
                sc=rec.sc[i0:i1],
                label=label,
                drop_reason=reason,
            )
        )
    return windows
