"""Feature CSV and baseline statistics files."""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from mtstress.features.dataset import (
    N_FEATURES,
    FeatureError,
    SubjectWindows,
    WindowedDataset,
)
from mtstress.features.normalization import BaselineStats

FEATURE_COLUMNS = [f"f{i:02d}" for i in range(N_FEATURES)]
HEADER = ["subject_id", "window_start_s", "label", *FEATURE_COLUMNS]


class FeatureFileError(FeatureError):
    """Raised when a feature or baseline file is malformed."""


def write_features(ds: WindowedDataset, path: Path) -> None:
    """Write all windows as `subject_id,window_start_s,label,f00..f15` CSV."""
    frames = []
    for sid, windows in ds.subjects.items():
        frame = pd.DataFrame(windows.X, columns=FEATURE_COLUMNS)
        frame.insert(0, "label", windows.y.astype(int))
        frame.insert(0, "window_start_s", windows.starts)
        frame.insert(0, "subject_id", sid)
        frames.append(frame)
    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=HEADER)
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, lineterminator="\n")


def read_features(
    path: Path,
    *,
    window_len_s: float = 30.0,
    step_s: float = 15.0,
    normalized: bool = True,
) -> WindowedDataset:
    """Read a feature CSV back into a WindowedDataset.

    Subjects keep the order of their first appearance; windows keep file order.
    The file does not record windowing parameters or normalization, so the caller
    states them.

    Raises
    ------
    FeatureFileError
        If the header differs from the canonical one or a label is not binary.

    """
    table = pd.read_csv(
        path, dtype={"subject_id": str}, float_precision="round_trip", encoding="utf-8"
    )
    if list(table.columns) != HEADER:
        msg = f"Unexpected feature header in {path}: {list(table.columns)}"
        raise FeatureFileError(msg)
    if not table["label"].isin([0, 1]).all():
        msg = f"Feature labels must be 0 or 1 in {path}"
        raise FeatureFileError(msg)

    subjects: dict[str, SubjectWindows] = {}
    for sid, group in table.groupby("subject_id", sort=False):
        subjects[str(sid)] = SubjectWindows(
            X=group[FEATURE_COLUMNS].to_numpy(dtype=float),
            y=group["label"].to_numpy(dtype=int),
            starts=group["window_start_s"].to_numpy(dtype=float),
        )
    return WindowedDataset(
        subjects=subjects, window_len_s=window_len_s, step_s=step_s, normalized=normalized
    )


def write_baseline_stats(stats: BaselineStats, path: Path) -> None:
    """Write baseline means as a JSON map subject_id -> 16 floats."""
    payload = {sid: [float(v) for v in means] for sid, means in stats.items()}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def read_baseline_stats(path: Path) -> BaselineStats:
    """Read baseline means written by write_baseline_stats."""
    payload = json.loads(path.read_text(encoding="utf-8"))
    stats: BaselineStats = {}
    for sid, values in payload.items():
        if len(values) != N_FEATURES:
            msg = f"Baseline of {sid} has {len(values)} values, expected {N_FEATURES}"
            raise FeatureFileError(msg)
        stats[sid] = np.asarray(values, dtype=float)
    return stats
