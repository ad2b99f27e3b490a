"""Reading and writing recordings, label spans and manifests."""

import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from mtstress.dataset.models import (
    UNLABELED,
    DatasetError,
    DatasetManifest,
    LabelSpan,
    SubjectRecording,
    check_spans,
)
from mtstress.dataset.preprocessing import BadRateError, hold_channel, upsample_channel

logger = logging.getLogger(__name__)

REQUIRED_CHANNELS = ("t", "hr", "sc")
OPTIONAL_CHANNELS = ("marker", "label")
RATE_TOLERANCE = 1e-3


class MissingChannelError(DatasetError):
    """Raised when a required column is absent from a recording file."""

    def __init__(self, channel: str, path: Path | None = None) -> None:
        self.channel = channel
        where = f" in {path}" if path is not None else ""
        super().__init__(f"Missing channel '{channel}'{where}")


class MalformedRowError(DatasetError):
    """Raised when a data row holds a non-numeric or out-of-order value.

    Rows are numbered from 1, not counting the header.
    """

    def __init__(self, row: int, column: str, path: Path | None = None) -> None:
        self.row = row
        self.column = column
        where = f" of {path}" if path is not None else ""
        super().__init__(f"Malformed value in column '{column}' at row {row}{where}")


class EmptyFileError(DatasetError):
    """Raised when a file has no data rows."""


class SpanFileError(DatasetError):
    """Raised when a label-span file is invalid."""


def _read_frame(path: Path) -> pd.DataFrame:
    """Read a CSV keeping every cell as text so that parsing stays under our control."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        msg = f"File is empty: {path}"
        raise EmptyFileError(msg) from e
    if frame.empty:
        msg = f"File has no data rows: {path}"
        raise EmptyFileError(msg)
    frame.columns = [str(c).strip() for c in frame.columns]
    return frame


def _numeric_columns(
    frame: pd.DataFrame, columns: list[str], path: Path
) -> dict[str, np.ndarray]:
    """Parse columns as finite floats, reporting the earliest bad row.

    An empty cell in the ``label`` column means unlabeled; everywhere else every
    cell must parse to a finite number.
    """
    parsed: dict[str, np.ndarray] = {}
    first_bad: tuple[int, str] | None = None
    for column in columns:
        text = frame[column].str.strip()
        values = pd.to_numeric(text, errors="coerce").to_numpy(dtype=float)
        if column == "label":
            values = np.where(text == "", UNLABELED, values)
            bad = ~np.isin(values, (0, 1, UNLABELED))
        else:
            bad = ~np.isfinite(values)
        if bad.any():
            row = int(np.argmax(bad)) + 1
            if first_bad is None or row < first_bad[0]:
                first_bad = (row, column)
        parsed[column] = values
    if first_bad is not None:
        raise MalformedRowError(first_bad[0], first_bad[1], path)
    return parsed


def _check_time(t: np.ndarray, path: Path) -> None:
    steps = np.diff(t)
    if (steps <= 0).any():
        raise MalformedRowError(int(np.argmax(steps <= 0)) + 2, "t", path)


def _file_rate(t: np.ndarray, fallback: float) -> float:
    """Estimate the sample rate of a time column from its median step."""
    if len(t) < 2:  # noqa: PLR2004
        return fallback
    return float(1.0 / np.median(np.diff(t)))


def _same_rate(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=RATE_TOLERANCE)


def _read_hr_stream(path: Path, target_hz: float) -> tuple[float, np.ndarray]:
    """Read a separate `t,hr` file and bring it to ``target_hz``.

    Returns
    -------
    tuple[float, np.ndarray]
        Start time of the stream and its upsampled HR values

    """
    frame = _read_frame(path)
    for column in ("t", "hr"):
        if column not in frame.columns:
            raise MissingChannelError(column, path)
    parsed = _numeric_columns(frame, ["t", "hr"], path)
    _check_time(parsed["t"], path)
    rate = _file_rate(parsed["t"], target_hz)
    hr = parsed["hr"]
    if not _same_rate(rate, target_hz):
        hr = upsample_channel(hr, rate, target_hz)
    return float(parsed["t"][0]), hr


def _align(values: np.ndarray, start_s: float, t0: float, fs: float, n: int) -> np.ndarray:
    """Place a stream starting at ``start_s`` on the grid ``t0 + k/fs``, k < n.

    Samples outside the stream hold its nearest edge value.
    """
    offset = round((t0 - start_s) * fs)
    index = np.clip(np.arange(n) + offset, 0, len(values) - 1)
    return values[index]


def load_recording(
    path: Path,
    manifest: DatasetManifest,
    *,
    subject_id: str | None = None,
    hr_path: Path | None = None,
) -> SubjectRecording:
    """Load a recording CSV and align its channels to the manifest sample rate.

    Parameters
    ----------
    path : Path
        CSV with header `t,hr,sc[,marker][,label]`
    manifest : DatasetManifest
        Dataset the recording belongs to; provides the target sample rate
    subject_id : str | None
        Subject identifier; defaults to the file stem
    hr_path : Path | None
        Optional `t,hr` file at a lower rate that replaces the `hr` column

    Returns
    -------
    SubjectRecording
        Recording with every channel at ``manifest.sample_rate_hz``

    Raises
    ------
    MissingChannelError
        If `t`, `hr` (unless ``hr_path`` is given) or `sc` is absent.
    MalformedRowError
        If a value does not parse as a finite number or time does not increase.
    EmptyFileError
        If the file holds no data rows.

    """
    frame = _read_frame(path)
    required = [c for c in REQUIRED_CHANNELS if not (c == "hr" and hr_path is not None)]
    for column in required:
        if column not in frame.columns:
            raise MissingChannelError(column, path)
    optional = [c for c in OPTIONAL_CHANNELS if c in frame.columns]
    parsed = _numeric_columns(frame, required + optional, path)
    t = parsed["t"]
    _check_time(t, path)

    target_hz = manifest.sample_rate_hz
    rate = _file_rate(t, target_hz)
    if rate > target_hz and not _same_rate(rate, target_hz):
        msg = f"{path} is sampled at {rate:.3f} Hz, above the dataset rate {target_hz}"
        raise BadRateError(msg)

    channels = {c: parsed[c] for c in ("hr", "sc", "marker") if c in parsed}
    labels = parsed.get("label")
    if not _same_rate(rate, target_hz):
        logger.info("Upsampling %s from %.3f Hz to %.3f Hz", path.name, rate, target_hz)
        channels = {c: upsample_channel(x, rate, target_hz) for c, x in channels.items()}
        if labels is not None:
            labels = hold_channel(labels, rate, target_hz)

    n = len(channels["sc"])
    if hr_path is not None:
        start_s, hr_stream = _read_hr_stream(hr_path, target_hz)
        channels["hr"] = _align(hr_stream, start_s, float(t[0]), target_hz, n)

    return SubjectRecording(
        subject_id=subject_id or path.stem,
        sample_rate_hz=target_hz,
        hr=channels["hr"],
        sc=channels["sc"],
        marker=channels.get("marker"),
        labels=None if labels is None else labels.astype(np.int8),
        t0=float(t[0]),
    )


def write_recording(rec: SubjectRecording, path: Path, *, include_hr: bool = True) -> None:
    """Write a recording as CSV in the format read by load_recording."""
    columns: dict[str, np.ndarray] = {"t": rec.times}
    if include_hr:
        columns["hr"] = rec.hr
    columns["sc"] = rec.sc
    if rec.marker is not None:
        columns["marker"] = rec.marker
    if rec.labels is not None:
        columns["label"] = rec.labels
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(columns).to_csv(path, index=False, lineterminator="\n")


def write_hr_stream(t: np.ndarray, hr: np.ndarray, path: Path) -> None:
    """Write a standalone `t,hr` stream."""
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame({"t": t, "hr": hr}).to_csv(path, index=False, lineterminator="\n")


def load_spans(path: Path) -> list[LabelSpan]:
    """Load a `start_s,end_s,label` file, sorted and checked for overlap.

    Raises
    ------
    SpanFileError
        If a column is missing, a row is invalid, or spans overlap.

    """
    frame = _read_frame(path)
    for column in ("start_s", "end_s", "label"):
        if column not in frame.columns:
            raise MissingChannelError(column, path)
    parsed = _numeric_columns(frame, ["start_s", "end_s"], path)
    spans: list[LabelSpan] = []
    for row, (start, end, label) in enumerate(
        zip(parsed["start_s"], parsed["end_s"], frame["label"].str.strip(), strict=True),
        start=1,
    ):
        if label not in ("0", "1"):
            raise MalformedRowError(row, "label", path)
        try:
            spans.append(LabelSpan(start_s=start, end_s=end, label=int(label)))  # type: ignore[arg-type]
        except ValueError as e:
            msg = f"Invalid span at row {row} of {path}: {e}"
            raise SpanFileError(msg) from e
    try:
        return check_spans(spans)
    except ValueError as e:
        raise SpanFileError(str(e)) from e


def write_spans(spans: list[LabelSpan], path: Path) -> None:
    """Write label spans as `start_s,end_s,label` CSV."""
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(
        {
            "start_s": [s.start_s for s in spans],
            "end_s": [s.end_s for s in spans],
            "label": [s.label for s in spans],
        }
    ).to_csv(path, index=False, lineterminator="\n")


def read_manifest(path: Path) -> DatasetManifest:
    """Read and validate a manifest JSON file."""
    return DatasetManifest.model_validate_json(path.read_text(encoding="utf-8"))


def write_manifest(manifest: DatasetManifest, path: Path) -> None:
    """Write a manifest JSON file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
