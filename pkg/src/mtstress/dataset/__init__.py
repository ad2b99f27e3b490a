"""Dataset package: recordings, manifests, preprocessing and labels."""

from mtstress.dataset.io import (
    EmptyFileError,
    MalformedRowError,
    MissingChannelError,
    SpanFileError,
    load_recording,
    load_spans,
    read_manifest,
    write_hr_stream,
    write_manifest,
    write_recording,
    write_spans,
)
from mtstress.dataset.models import (
    TRIAL_LABELS,
    TRIAL_TEMPLATES,
    UNLABELED,
    DatasetError,
    DatasetManifest,
    LabelMode,
    LabelSpan,
    SubjectEntry,
    SubjectRecording,
    Trial,
    labels_from_spans,
    spans_from_labels,
)
from mtstress.dataset.pipeline import (
    LabeledRecording,
    LoadedDataset,
    MissingSpanFileError,
    load_dataset,
    load_subject,
)
from mtstress.dataset.preprocessing import (
    AllSamplesInvalidError,
    BadRateError,
    EmptyChannelError,
    TemplateMismatchError,
    TooFewMarkersError,
    detect_marker_peaks,
    remove_artifacts,
    trim_and_label,
    upsample_channel,
)

__all__ = [
    "TRIAL_LABELS",
    "TRIAL_TEMPLATES",
    "UNLABELED",
    "AllSamplesInvalidError",
    "BadRateError",
    "DatasetError",
    "DatasetManifest",
    "EmptyChannelError",
    "EmptyFileError",
    "LabelMode",
    "LabelSpan",
    "LabeledRecording",
    "LoadedDataset",
    "MalformedRowError",
    "MissingChannelError",
    "MissingSpanFileError",
    "SpanFileError",
    "SubjectEntry",
    "SubjectRecording",
    "TemplateMismatchError",
    "TooFewMarkersError",
    "Trial",
    "detect_marker_peaks",
    "labels_from_spans",
    "load_dataset",
    "load_recording",
    "load_spans",
    "load_subject",
    "read_manifest",
    "remove_artifacts",
    "spans_from_labels",
    "trim_and_label",
    "upsample_channel",
    "write_hr_stream",
    "write_manifest",
    "write_recording",
    "write_spans",
]
