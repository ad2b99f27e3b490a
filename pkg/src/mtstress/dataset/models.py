"""Recording, label span and manifest types for physiological datasets.

This module defines the in-memory and on-disk shapes of a dataset:
- SubjectRecording: one subject's aligned HR/SC (and optional marker/label) channels
- LabelSpan: a labeled time interval (0 = baseline/rest, 1 = stress)
- DatasetManifest: the JSON file that lists the subjects of a dataset
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import StrEnum
from typing import Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

UNLABELED = -1


class DatasetError(Exception):
    """Base exception for dataset loading and preprocessing errors."""


class Trial(StrEnum):
    """Kinds of experiment segments that can appear between two markers."""

    REST = "rest"
    BASELINE = "baseline"
    CITY = "city"
    HIGHWAY = "highway"
    DRIVE = "drive"
    STRESS = "stress"
    MODERATE = "moderate"


# None marks segments that are excluded from training altogether
TRIAL_LABELS: dict[Trial, int | None] = {
    Trial.REST: 0,
    Trial.BASELINE: 0,
    Trial.CITY: 1,
    Trial.HIGHWAY: 1,
    Trial.DRIVE: 1,
    Trial.STRESS: 1,
    Trial.MODERATE: None,
}

TRIAL_TEMPLATES: dict[str, tuple[Trial, ...]] = {
    "driving": (
        Trial.REST,
        Trial.CITY,
        Trial.HIGHWAY,
        Trial.CITY,
        Trial.HIGHWAY,
        Trial.CITY,
        Trial.REST,
    ),
    "simulator": (Trial.BASELINE, Trial.MODERATE, Trial.STRESS),
    "alternating": (Trial.REST, Trial.STRESS) * 32,
}


class LabelMode(StrEnum):
    """Where the binary labels of a dataset come from."""

    MARKER = "marker-derived"
    SPAN_FILE = "span-file"
    LABEL_COLUMN = "label-column"


@dataclass(frozen=True)
class SubjectRecording:
    """One subject's physiological channels on a common time base.

    Attributes
    ----------
    subject_id : str
        Subject identifier, unique within a dataset
    sample_rate_hz : float
        Common sample rate of every channel
    hr : np.ndarray
        Heart rate in beats per minute
    sc : np.ndarray
        Skin conductance in microsiemens
    marker : np.ndarray | None
        Event marker channel in arbitrary units, if recorded
    labels : np.ndarray | None
        Per-sample labels in {0, 1, UNLABELED}, once derived
    t0 : float
        Time of the first sample in seconds

    """

    subject_id: str
    sample_rate_hz: float
    hr: np.ndarray
    sc: np.ndarray
    marker: np.ndarray | None = None
    labels: np.ndarray | None = None
    t0: float = 0.0

    def __post_init__(self) -> None:
        if self.sample_rate_hz <= 0:
            msg = f"Sample rate must be positive, got {self.sample_rate_hz}"
            raise ValueError(msg)
        lengths = {len(self.hr), len(self.sc)}
        lengths.update(len(ch) for ch in (self.marker, self.labels) if ch is not None)
        if len(lengths) != 1:
            msg = f"Channels of {self.subject_id} have unequal lengths: {lengths}"
            raise ValueError(msg)

    @property
    def n_samples(self) -> int:
        """Number of samples per channel."""
        return len(self.hr)

    @property
    def duration_s(self) -> float:
        """Covered duration in seconds."""
        return self.n_samples / self.sample_rate_hz

    @property
    def times(self) -> np.ndarray:
        """Timestamp of every sample in seconds."""
        return self.t0 + np.arange(self.n_samples) / self.sample_rate_hz

    def time_at(self, index: int) -> float:
        """Timestamp of the sample at ``index``."""
        return self.t0 + index / self.sample_rate_hz

    def crop(self, start: int, stop: int) -> SubjectRecording:
        """Return samples ``start`` (inclusive) to ``stop`` (exclusive)."""
        return dataclasses.replace(
            self,
            hr=self.hr[start:stop],
            sc=self.sc[start:stop],
            marker=None if self.marker is None else self.marker[start:stop],
            labels=None if self.labels is None else self.labels[start:stop],
            t0=self.time_at(start),
        )

    def with_labels(self, labels: np.ndarray) -> SubjectRecording:
        """Return a copy carrying the given per-sample labels."""
        return dataclasses.replace(self, labels=np.asarray(labels, dtype=np.int8))

    def with_channels(self, *, hr: np.ndarray, sc: np.ndarray) -> SubjectRecording:
        """Return a copy with replaced HR and SC channels."""
        return dataclasses.replace(self, hr=hr, sc=sc)


class LabelSpan(BaseModel):
    """A half-open time interval ``[start_s, end_s)`` carrying one binary label."""

    model_config = ConfigDict(frozen=True)

    start_s: float
    end_s: float
    label: Literal[0, 1]

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if not self.start_s < self.end_s:
            msg = f"Span start {self.start_s} must precede end {self.end_s}"
            raise ValueError(msg)
        return self

    @property
    def duration_s(self) -> float:
        """Span length in seconds."""
        return self.end_s - self.start_s


def check_spans(spans: list[LabelSpan]) -> list[LabelSpan]:
    """Sort spans by start time and verify that they do not overlap.

    Raises
    ------
    ValueError
        If two spans overlap.

    """
    ordered = sorted(spans, key=lambda s: s.start_s)
    for prev, cur in zip(ordered, ordered[1:], strict=False):
        if cur.start_s < prev.end_s:
            msg = f"Spans overlap: [{prev.start_s}, {prev.end_s}) and [{cur.start_s}"
            msg += f", {cur.end_s})"
            raise ValueError(msg)
    return ordered


def labels_from_spans(times: np.ndarray, spans: list[LabelSpan]) -> np.ndarray:
    """Label every sample time with the span containing it, or UNLABELED."""
    labels = np.full(len(times), UNLABELED, dtype=np.int8)
    for span in spans:
        inside = (times >= span.start_s) & (times < span.end_s)
        labels[inside] = span.label
    return labels


def spans_from_labels(times: np.ndarray, labels: np.ndarray) -> list[LabelSpan]:
    """Turn contiguous runs of 0/1 labels into spans.

    A run ends at the timestamp of the first sample after it, or one sample period
    past the last sample when the run reaches the end of the recording.
    """
    spans: list[LabelSpan] = []
    if len(labels) == 0:
        return spans
    period = times[1] - times[0] if len(times) > 1 else 1.0
    change = np.flatnonzero(np.diff(labels)) + 1
    starts = np.concatenate(([0], change))
    stops = np.concatenate((change, [len(labels)]))
    for start, stop in zip(starts, stops, strict=True):
        label = int(labels[start])
        if label == UNLABELED:
            continue
        end_s = times[stop] if stop < len(times) else times[-1] + period
        spans.append(
            LabelSpan(start_s=float(times[start]), end_s=float(end_s), label=label)  # type: ignore[arg-type]
        )
    return spans


class SubjectEntry(BaseModel):
    """One subject of a dataset manifest.

    Attributes
    ----------
    subject_id : str
        Subject identifier
    path : str
        Recording CSV, relative to the manifest directory
    format : str
        File format tag, currently always "csv"
    spans_path : str | None
        Label-span CSV for span-file datasets
    hr_path : str | None
        Separate low-rate `t,hr` CSV to be upsampled onto the recording

    """

    subject_id: str = Field(min_length=1)
    path: str
    format: Literal["csv"] = "csv"
    spans_path: str | None = None
    hr_path: str | None = None


class DatasetManifest(BaseModel):
    """JSON description of a dataset on disk.

    Attributes
    ----------
    name : str
        Dataset name, recorded in splits, checkpoints and reports
    sample_rate_hz : float
        Rate every channel is brought to on load
    label_mode : LabelMode
        How labels are derived
    trial_template : list[Trial] | str | None
        Segment order between markers, or the name of a preset in TRIAL_TEMPLATES.
        Required for marker-derived labels.
    buffer_s : float
        Ambiguous time removed where rest meets stress
    subjects : list[SubjectEntry]
        The subjects, at least one, with unique ids

    """

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    sample_rate_hz: float = Field(gt=0)
    label_mode: LabelMode
    trial_template: list[Trial] | str | None = None
    buffer_s: float = Field(default=240.0, ge=0)
    subjects: list[SubjectEntry] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_manifest(self) -> Self:
        ids = [s.subject_id for s in self.subjects]
        if len(set(ids)) != len(ids):
            msg = "Subject ids must be unique"
            raise ValueError(msg)
        if isinstance(self.trial_template, str) and (
            self.trial_template not in TRIAL_TEMPLATES
        ):
            msg = f"Unknown trial template preset: {self.trial_template}"
            raise ValueError(msg)
        if self.label_mode == LabelMode.MARKER and not self.trial_template:
            msg = "Marker-derived labels need a trial_template"
            raise ValueError(msg)
        return self

    def template(self) -> tuple[Trial, ...]:
        """Resolve the trial template, expanding preset names."""
        if self.trial_template is None:
            return ()
        if isinstance(self.trial_template, str):
            return TRIAL_TEMPLATES[self.trial_template]
        return tuple(self.trial_template)
