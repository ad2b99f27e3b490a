"""Unit tests for signal preprocessing."""

import numpy as np
import pytest

from mtstress.dataset.models import UNLABELED, SubjectRecording, Trial
from mtstress.dataset.preprocessing import (
    AllSamplesInvalidError,
    BadRateError,
    EmptyChannelError,
    TemplateMismatchError,
    TooFewMarkersError,
    detect_marker_peaks,
    hold_channel,
    remove_artifacts,
    trim_and_label,
    upsample_channel,
)

RATE_HZ = 4.0


def make_recording(n: int, *, hr: float = 70.0, sc: float = 3.0) -> SubjectRecording:
    """Build a flat recording of ``n`` samples at 4 Hz."""
    return SubjectRecording(
        subject_id="S01",
        sample_rate_hz=RATE_HZ,
        hr=np.full(n, hr),
        sc=np.full(n, sc),
    )


class TestUpsampleChannel:
    """Tests for upsample_channel function."""

    def test_linear_interpolation(self):
        """Test that intermediate samples lie on the line between inputs."""
        out = upsample_channel(np.array([60.0, 70.0]), 1, 2)

        assert out.tolist() == [60.0, 65.0, 70.0, 70.0]

    def test_constant_stays_constant(self):
        """Test that a constant channel is unchanged by upsampling."""
        out = upsample_channel(np.full(10, 3.5), 1, 4)

        assert len(out) == 40
        assert np.all(out == 3.5)

    def test_length_rounds_half_up(self):
        """Test the output length for a non-integer ratio."""
        out = upsample_channel(np.arange(3.0), 2, 5)

        assert len(out) == 8  # 7.5 rounds up

    def test_same_rate_is_copy(self):
        """Test that equal rates return an equal, independent array."""
        x = np.array([1.0, 2.0])
        out = upsample_channel(x, 4, 4)

        assert out.tolist() == [1.0, 2.0]
        assert out is not x

    @pytest.mark.parametrize(("from_hz", "to_hz"), [(0, 4), (4, -1), (8, 4)])
    def test_bad_rates(self, from_hz: float, to_hz: float):
        """Test that nonpositive rates and downsampling are rejected."""
        with pytest.raises(BadRateError):
            upsample_channel(np.array([1.0, 2.0]), from_hz, to_hz)

    def test_empty_channel(self):
        """Test that an empty channel cannot be upsampled."""
        with pytest.raises(EmptyChannelError):
            upsample_channel(np.array([]), 1, 4)


def test_hold_channel_repeats_values():
    """Test that categorical channels are held, not interpolated."""
    out = hold_channel(np.array([0, 1, -1]), 1, 2)

    assert out.tolist() == [0, 0, 1, 1, -1, -1]


class TestDetectMarkerPeaks:
    """Tests for detect_marker_peaks function."""

    def test_finds_isolated_presses(self):
        """Test that presses well apart are all found."""
        marker = np.zeros(1000)
        marker[[100, 400, 800]] = 5.0

        assert detect_marker_peaks(marker, RATE_HZ) == [100, 400, 800]

    def test_keeps_earliest_of_burst(self):
        """Test that presses closer than the minimum distance collapse to the first."""
        marker = np.zeros(1000)
        marker[[100, 150, 600]] = 5.0  # 150 is 12.5 s after 100

        assert detect_marker_peaks(marker, RATE_HZ) == [100, 600]

    def test_flat_channel_has_no_presses(self):
        """Test that a constant marker yields nothing."""
        assert detect_marker_peaks(np.zeros(100), RATE_HZ) == []

    def test_empty_marker(self):
        """Test that an empty marker channel is rejected."""
        with pytest.raises(EmptyChannelError):
            detect_marker_peaks(np.array([]), RATE_HZ)


class TestTrimAndLabel:
    """Tests for trim_and_label function."""

    def test_buffer_around_transitions(self):
        """Test that rest loses the buffer on the side facing stress."""
        rec = make_recording(4 * 1000)
        peaks = [0, 1200, 2400, 3600]  # 300 s segments
        template = (Trial.REST, Trial.STRESS, Trial.REST)

        trimmed, spans = trim_and_label(rec, peaks, template, buffer_s=60.0)

        assert [(s.start_s, s.end_s, s.label) for s in spans] == [
            (0.0, 240.0, 0),
            (300.0, 600.0, 1),
            (660.0, 900.0, 0),
        ]
        assert trimmed.n_samples == 3600
        assert trimmed.labels is not None
        assert trimmed.labels[0] == 0
        assert trimmed.labels[int(250 * RATE_HZ)] == UNLABELED
        assert trimmed.labels[int(450 * RATE_HZ)] == 1

    def test_moderate_segment_is_unlabeled(self):
        """Test that segments without a binary label produce no span."""
        rec = make_recording(4 * 300)
        template = (Trial.BASELINE, Trial.MODERATE, Trial.STRESS)

        _, spans = trim_and_label(rec, [0, 400, 800, 1200], template, buffer_s=0.0)

        assert [s.label for s in spans] == [0, 1]
        assert spans[1].start_s == 200.0

    def test_rest_shorter_than_buffer_disappears(self):
        """Test that a rest segment shorter than the buffer has no span."""
        rec = make_recording(4 * 400)
        template = (Trial.STRESS, Trial.REST, Trial.STRESS)

        _, spans = trim_and_label(rec, [0, 400, 800, 1200], template, buffer_s=60.0)

        assert [s.label for s in spans] == [1, 1]

    def test_trim_sets_start_time(self):
        """Test that trimming starts the recording at the first press."""
        rec = make_recording(4 * 200)

        trimmed, _ = trim_and_label(rec, [40, 400], (Trial.REST,), buffer_s=0.0)

        assert trimmed.t0 == 10.0
        assert trimmed.n_samples == 360

    def test_too_few_markers(self):
        """Test that a single press cannot bound a trial."""
        with pytest.raises(TooFewMarkersError):
            trim_and_label(make_recording(100), [10], (Trial.REST,))

    def test_template_too_short(self):
        """Test that every marker segment needs a template entry."""
        with pytest.raises(TemplateMismatchError):
            trim_and_label(make_recording(100), [0, 30, 60], (Trial.REST,))

    def test_surplus_template_is_ignored(self):
        """Test that extra template entries are allowed."""
        _, spans = trim_and_label(
            make_recording(100), [0, 40], (Trial.REST, Trial.STRESS), buffer_s=0.0
        )

        assert len(spans) == 1


class TestRemoveArtifacts:
    """Tests for remove_artifacts function."""

    def test_interpolates_interior_outlier(self):
        """Test that an implausible HR sample is replaced by its neighbours' mean."""
        rec = make_recording(5)
        rec = rec.with_channels(hr=np.array([60.0, 62.0, 400.0, 66.0, 68.0]), sc=rec.sc)

        fixed = remove_artifacts(rec)

        assert fixed.hr.tolist() == [60.0, 62.0, 64.0, 66.0, 68.0]

    def test_edges_hold_nearest_valid(self):
        """Test that leading and trailing artifacts take the nearest valid value."""
        rec = make_recording(4)
        rec = rec.with_channels(hr=rec.hr, sc=np.array([np.nan, 2.0, 4.0, -1.0]))

        fixed = remove_artifacts(rec)

        assert fixed.sc.tolist() == [2.0, 2.0, 4.0, 4.0]

    def test_idempotent(self):
        """Test that a second repair changes nothing."""
        rec = make_recording(4)
        rec = rec.with_channels(hr=np.array([10.0, 70.0, 80.0, 300.0]), sc=rec.sc)

        once = remove_artifacts(rec)
        twice = remove_artifacts(once)

        assert twice.hr.tolist() == once.hr.tolist()

    def test_all_invalid(self):
        """Test that a channel without any valid sample is an error."""
        rec = make_recording(3, hr=0.0)

        with pytest.raises(AllSamplesInvalidError, match="'hr'"):
            remove_artifacts(rec)
