"""Signal preprocessing: upsampling, marker peaks, trimming and artifact repair."""

import logging
import math

import numpy as np
from scipy.signal import find_peaks

from mtstress.dataset.models import (
    TRIAL_LABELS,
    DatasetError,
    LabelSpan,
    SubjectRecording,
    Trial,
    labels_from_spans,
)

logger = logging.getLogger(__name__)

HR_RANGE_BPM = (30.0, 220.0)
SC_RANGE_US = (0.01, 100.0)
MARKER_Z = 3.0
MARKER_MIN_DISTANCE_S = 30.0
BUFFER_S = 240.0


class BadRateError(DatasetError):
    """Raised when sample rates are nonpositive or would require downsampling."""


class EmptyChannelError(DatasetError):
    """Raised when a channel has no samples."""


class TooFewMarkersError(DatasetError):
    """Raised when fewer than two marker peaks bound the experiment."""


class TemplateMismatchError(DatasetError):
    """Raised when the trial template is shorter than the marker segments."""


class AllSamplesInvalidError(DatasetError):
    """Raised when every sample of a channel is outside its plausible range."""

    def __init__(self, channel: str) -> None:
        self.channel = channel
        super().__init__(f"Every sample of channel '{channel}' is out of range")


def _round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


def upsample_channel(x: np.ndarray, from_hz: float, to_hz: float) -> np.ndarray:
    """Upsample a channel by linear interpolation.

    Output sample k sits at time k / to_hz. Times past the last input sample hold
    its value, so endpoints are preserved and constant inputs stay constant.

    Parameters
    ----------
    x : np.ndarray
        Input samples, nonempty
    from_hz : float
        Input rate
    to_hz : float
        Output rate, at least ``from_hz``

    Returns
    -------
    np.ndarray
        ``round(len(x) * to_hz / from_hz)`` samples, rounding halves up

    Raises
    ------
    BadRateError
        If a rate is nonpositive or ``from_hz > to_hz``.

    Examples
    --------
    >>> upsample_channel(np.array([60.0, 70.0]), 1, 2).tolist()
    [60.0, 65.0, 70.0, 70.0]

    """
    if from_hz <= 0 or to_hz <= 0 or from_hz > to_hz:
        msg = f"Cannot upsample from {from_hz} Hz to {to_hz} Hz"
        raise BadRateError(msg)
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        msg = "Cannot upsample an empty channel"
        raise EmptyChannelError(msg)
    if from_hz == to_hz:
        return x.copy()
    n_out = _round_half_up(len(x) * to_hz / from_hz)
    t_in = np.arange(len(x)) / from_hz
    t_out = np.arange(n_out) / to_hz
    return np.interp(t_out, t_in, x)


def hold_channel(x: np.ndarray, from_hz: float, to_hz: float) -> np.ndarray:
    """Upsample a categorical channel by sample-and-hold."""
    n_out = _round_half_up(len(x) * to_hz / from_hz)
    index = np.minimum(np.floor(np.arange(n_out) * from_hz / to_hz), len(x) - 1)
    return np.asarray(x)[index.astype(int)]


def detect_marker_peaks(
    marker: np.ndarray,
    sample_rate_hz: float,
    *,
    z: float = MARKER_Z,
    min_distance_s: float = MARKER_MIN_DISTANCE_S,
) -> list[int]:
    """Find button-press events in a marker channel.

    A press is a local maximum strictly above ``mean + z * std`` of the channel.
    Scanning left to right, a press closer than ``min_distance_s`` to the previous
    kept press is discarded, so the earliest press of a burst wins.

    Returns
    -------
    list[int]
        Sample indices in increasing order, empty if there are no presses

    """
    x = np.asarray(marker, dtype=float)
    if x.size == 0:
        msg = "Marker channel is empty"
        raise EmptyChannelError(msg)
    threshold = x.mean() + z * x.std()
    candidates, _ = find_peaks(x, height=threshold)
    min_gap = math.ceil(min_distance_s * sample_rate_hz - 1e-9)
    peaks: list[int] = []
    for index in candidates:
        if x[index] <= threshold:
            continue
        if not peaks or index - peaks[-1] >= min_gap:
            peaks.append(int(index))
    logger.debug("Detected %d marker peaks (threshold %.3f)", len(peaks), threshold)
    return peaks


def trim_and_label(
    rec: SubjectRecording,
    peaks: list[int],
    template: tuple[Trial, ...],
    *,
    buffer_s: float = BUFFER_S,
) -> tuple[SubjectRecording, list[LabelSpan]]:
    """Cut a recording to its marked trials and label each trial segment.

    Segments between consecutive peaks take their trial kind from ``template`` in
    order. ``buffer_s`` seconds are removed at the end of a rest segment that is
    followed by stress and at the start of a rest segment that follows stress; a
    rest segment shorter than the buffer disappears. Segments whose trial kind has
    no label (moderate stress) produce no span.

    Parameters
    ----------
    rec : SubjectRecording
        Recording to trim
    peaks : list[int]
        Sorted marker sample indices, at least two
    template : tuple[Trial, ...]
        Trial kind of each segment; surplus entries are ignored
    buffer_s : float
        Ambiguous time removed around rest/stress transitions

    Returns
    -------
    tuple[SubjectRecording, list[LabelSpan]]
        The recording restricted to ``[peaks[0], peaks[-1])`` with per-sample labels,
        and the spans of labeled time

    Raises
    ------
    TooFewMarkersError
        If fewer than two peaks are given.
    TemplateMismatchError
        If the template has fewer entries than there are segments.

    """
    if len(peaks) < 2:  # noqa: PLR2004
        msg = f"Need at least two marker peaks, found {len(peaks)}"
        raise TooFewMarkersError(msg)
    if any(b <= a for a, b in zip(peaks, peaks[1:], strict=False)):
        msg = "Marker peaks must be strictly increasing"
        raise ValueError(msg)
    n_segments = len(peaks) - 1
    if len(template) < n_segments:
        msg = f"Template has {len(template)} trials for {n_segments} marker segments"
        raise TemplateMismatchError(msg)

    labels = [TRIAL_LABELS[trial] for trial in template[:n_segments]]
    spans: list[LabelSpan] = []
    for k, label in enumerate(labels):
        if label is None:
            continue
        start_s = rec.time_at(peaks[k])
        end_s = rec.time_at(peaks[k + 1])
        if label == 0:
            if k + 1 < n_segments and labels[k + 1] == 1:
                end_s -= buffer_s
            if k > 0 and labels[k - 1] == 1:
                start_s += buffer_s
        if end_s > start_s:
            spans.append(LabelSpan(start_s=start_s, end_s=end_s, label=label))  # type: ignore[arg-type]
        else:
            logger.debug("Segment %d of %s is shorter than the buffer", k, rec.subject_id)

    trimmed = rec.crop(peaks[0], peaks[-1])
    return trimmed.with_labels(labels_from_spans(trimmed.times, spans)), spans


def _repair(x: np.ndarray, low: float, high: float, channel: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    valid = np.isfinite(x) & (x >= low) & (x <= high)
    if not valid.any():
        raise AllSamplesInvalidError(channel)
    if valid.all():
        return x.copy()
    index = np.arange(x.size)
    repaired = x.copy()
    # np.interp holds the edge values, which covers leading and trailing runs
    repaired[~valid] = np.interp(index[~valid], index[valid], x[valid])
    return repaired


def remove_artifacts(
    rec: SubjectRecording,
    *,
    hr_range: tuple[float, float] = HR_RANGE_BPM,
    sc_range: tuple[float, float] = SC_RANGE_US,
) -> SubjectRecording:
    """Replace implausible HR and SC samples by interpolation.

    Samples outside ``hr_range`` (bpm) or ``sc_range`` (microsiemens), and NaNs, are
    replaced by linear interpolation between the nearest valid neighbours; runs at
    either end take the nearest valid value. Applying it twice changes nothing.

    Raises
    ------
    AllSamplesInvalidError
        If a channel has no valid sample at all.

    """
    hr = _repair(rec.hr, *hr_range, channel="hr")
    sc = _repair(rec.sc, *sc_range, channel="sc")
    n_fixed = int(np.count_nonzero(hr != rec.hr) + np.count_nonzero(sc != rec.sc))
    if n_fixed:
        logger.info("Repaired %d artifact samples for %s", n_fixed, rec.subject_id)
    return rec.with_channels(hr=hr, sc=sc)
