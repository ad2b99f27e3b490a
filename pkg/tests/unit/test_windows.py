"""Unit tests for sliding windows."""

import numpy as np
import pytest

from mtstress.dataset.models import LabelSpan, SubjectRecording
from mtstress.features.windows import (
    BadWindowParamsError,
    slide_windows,
    window_label,
)

RATE_HZ = 4.0


def make_recording(duration_s: float, t0: float = 0.0) -> SubjectRecording:
    """A recording whose HR channel counts samples, so windows are easy to locate."""
    n = round(duration_s * RATE_HZ)
    return SubjectRecording(
        subject_id="S01",
        sample_rate_hz=RATE_HZ,
        hr=np.arange(n, dtype=float),
        sc=np.ones(n),
        t0=t0,
    )


class TestSlideWindows:
    """Tests for slide_windows function."""

    def test_window_count_and_size(self):
        """Test that 120 s at 30/15 gives 7 windows of 120 samples."""
        rec = make_recording(120)
        spans = [LabelSpan(start_s=0, end_s=120, label=0)]

        windows = slide_windows(rec, spans, 30, 15)

        assert len(windows) == 7
        assert all(len(w.hr) == 120 for w in windows)
        assert [w.start_s for w in windows] == [0, 15, 30, 45, 60, 75, 90]
        assert windows[1].hr[0] == 60.0

    def test_no_partial_window_at_end(self):
        """Test that a trailing remainder shorter than a window is dropped."""
        windows = slide_windows(make_recording(50), [], 30, 15)

        assert len(windows) == 2

    def test_recording_shorter_than_window(self):
        """Test that too short recordings yield no windows."""
        assert slide_windows(make_recording(20), [], 30, 15) == []

    def test_start_times_follow_offset(self):
        """Test that window starts include the recording start time."""
        windows = slide_windows(make_recording(60, t0=100.0), [], 30, 30)

        assert [w.start_s for w in windows] == [100.0, 130.0]

    def test_majority_label(self):
        """Test that a window takes the label covering most of its samples."""
        rec = make_recording(60)
        spans = [
            LabelSpan(start_s=0, end_s=40, label=0),
            LabelSpan(start_s=40, end_s=60, label=1),
        ]

        windows = slide_windows(rec, spans, 30, 15)

        # [15, 45) holds 25 s of baseline, [30, 60) holds 20 s of stress
        assert [w.label for w in windows] == [0, 0, 1]

    def test_tie_is_dropped(self):
        """Test that an exact split between classes drops the window."""
        rec = make_recording(30)
        spans = [
            LabelSpan(start_s=0, end_s=15, label=0),
            LabelSpan(start_s=15, end_s=30, label=1),
        ]

        (window,) = slide_windows(rec, spans, 30, 15)

        assert window.label is None
        assert window.drop_reason == "tie"

    def test_mostly_unlabeled_is_dropped(self):
        """Test that windows mostly outside every span are dropped."""
        rec = make_recording(30)
        spans = [LabelSpan(start_s=0, end_s=10, label=1)]

        (window,) = slide_windows(rec, spans, 30, 15)

        assert window.label is None
        assert window.drop_reason == "unlabeled"

    @pytest.mark.parametrize(("length", "step"), [(0, 15), (30, 0), (30, 45), (-1, -1)])
    def test_bad_parameters(self, length: float, step: float):
        """Test that invalid window length and step are rejected."""
        with pytest.raises(BadWindowParamsError):
            slide_windows(make_recording(60), [], length, step)


class TestWindowLabel:
    """Tests for window_label function."""

    def test_plurality_with_unlabeled(self):
        """Test that a labeled class wins when it has the most samples."""
        assert window_label(np.array([1, 1, 1, 0, -1, -1])) == (1, None)

    def test_unlabeled_plurality(self):
        """Test that unlabeled samples can outvote both classes."""
        assert window_label(np.array([1, 0, -1, -1])) == (None, "unlabeled")
