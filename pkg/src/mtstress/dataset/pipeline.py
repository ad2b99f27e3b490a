"""Load a whole dataset: read, repair and label every subject of a manifest."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from mtstress.dataset.io import (
    MissingChannelError,
    load_recording,
    load_spans,
    read_manifest,
)
from mtstress.dataset.models import (
    DatasetError,
    DatasetManifest,
    LabelMode,
    LabelSpan,
    SubjectEntry,
    SubjectRecording,
    labels_from_spans,
    spans_from_labels,
)
from mtstress.dataset.preprocessing import (
    detect_marker_peaks,
    remove_artifacts,
    trim_and_label,
)

logger = logging.getLogger(__name__)


class MissingSpanFileError(DatasetError):
    """Raised when a span-file dataset lists a subject without a span file."""


@dataclass(frozen=True)
class LabeledRecording:
    """A preprocessed recording together with its label spans."""

    recording: SubjectRecording
    spans: list[LabelSpan]


@dataclass
class LoadedDataset:
    """Result of loading a manifest.

    Attributes
    ----------
    manifest : DatasetManifest
        The manifest that was loaded
    subjects : dict[str, LabeledRecording]
        Successfully loaded subjects, in manifest order
    failures : dict[str, str]
        Error message for every subject that could not be loaded

    """

    manifest: DatasetManifest
    subjects: dict[str, LabeledRecording] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)


def load_subject(
    entry: SubjectEntry, manifest: DatasetManifest, base_dir: Path
) -> LabeledRecording:
    """Load one subject and derive its labels according to the manifest.

    Artifacts are repaired before labeling. Marker-derived datasets are trimmed to
    the marked trials; span-file and label-column datasets keep the full recording
    and leave time outside the spans unlabeled.

    Raises
    ------
    DatasetError
        If the recording cannot be loaded or labeled.
    OSError
        If a file cannot be read.

    """
    rec = load_recording(
        base_dir / entry.path,
        manifest,
        subject_id=entry.subject_id,
        hr_path=base_dir / entry.hr_path if entry.hr_path else None,
    )
    rec = remove_artifacts(rec)

    if manifest.label_mode == LabelMode.MARKER:
        if rec.marker is None:
            raise MissingChannelError("marker", base_dir / entry.path)
        peaks = detect_marker_peaks(rec.marker, rec.sample_rate_hz)
        rec, spans = trim_and_label(
            rec, peaks, manifest.template(), buffer_s=manifest.buffer_s
        )
    elif manifest.label_mode == LabelMode.SPAN_FILE:
        if entry.spans_path is None:
            msg = f"Subject {entry.subject_id} has no spans_path"
            raise MissingSpanFileError(msg)
        spans = load_spans(base_dir / entry.spans_path)
        rec = rec.with_labels(labels_from_spans(rec.times, spans))
    else:
        if rec.labels is None:
            raise MissingChannelError("label", base_dir / entry.path)
        spans = spans_from_labels(rec.times, rec.labels)

    logger.info(
        "Loaded %s: %d samples, %d labeled spans",
        entry.subject_id,
        rec.n_samples,
        len(spans),
    )
    return LabeledRecording(recording=rec, spans=spans)


def load_dataset(manifest_path: Path, jobs: int = 1) -> LoadedDataset:
    """Load every subject of a manifest, collecting per-subject failures.

    Subjects are independent and are loaded on up to ``jobs`` threads; the result
    keeps manifest order regardless.
    """
    manifest = read_manifest(manifest_path)
    base_dir = manifest_path.parent

    def _load(entry: SubjectEntry) -> LabeledRecording | Exception:
        try:
            return load_subject(entry, manifest, base_dir)
        except (DatasetError, OSError, ValueError) as e:
            return e

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(_load, manifest.subjects))

    loaded = LoadedDataset(manifest=manifest)
    for entry, result in zip(manifest.subjects, results, strict=True):
        if isinstance(result, Exception):
            logger.warning("Skipping subject %s: %s", entry.subject_id, result)
            loaded.failures[entry.subject_id] = str(result)
        else:
            loaded.subjects[entry.subject_id] = result
    return loaded
