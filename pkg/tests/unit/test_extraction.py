"""Unit tests for heart rate and skin conductance features."""

import numpy as np
import pytest
from scipy import stats

from mtstress.features.dataset import FEATURE_NAMES, N_FEATURES
from mtstress.features.extraction import (
    InsufficientSamplesError,
    count_sc_peaks,
    extract_features,
    hr_features,
    sc_features,
)

RATE_HZ = 4.0


class TestHrFeatures:
    """Tests for hr_features function."""

    def test_successive_differences(self):
        """Test RMSSD and SDSD on a short alternating series."""
        values = hr_features(np.array([60.0, 62.0, 60.0]))

        assert values[5] == pytest.approx(2.0)
        assert values[6] == pytest.approx(2.0)

    def test_summary_statistics(self):
        """Test mean, population std, extremes and range."""
        x = np.array([60.0, 70.0, 80.0, 90.0])

        mean, std, low, high, spread, _, _ = hr_features(x)

        assert mean == 75.0
        assert std == pytest.approx(np.sqrt(125.0))
        assert (low, high, spread) == (60.0, 90.0, 30.0)

    def test_constant_window(self):
        """Test that a flat series has zero spread and variability."""
        values = hr_features(np.full(120, 72.0))

        assert values[0] == 72.0
        assert values[[1, 4, 5, 6]].tolist() == [0.0, 0.0, 0.0, 0.0]

    def test_too_short(self):
        """Test that one sample is not enough."""
        with pytest.raises(InsufficientSamplesError):
            hr_features(np.array([60.0]))


class TestCountScPeaks:
    """Tests for count_sc_peaks function."""

    def test_counts_responses_above_rise(self):
        """Test that only maxima rising enough above the preceding trough count."""
        x = np.array([1.0, 1.2, 1.0, 1.02, 1.0, 1.5, 1.1])

        count, amplitude = count_sc_peaks(x, RATE_HZ)

        assert count == 2
        assert amplitude == pytest.approx((0.2 + 0.5) / 2)

    def test_monotonic_has_no_peaks(self):
        """Test that a rising series has no interior maximum."""
        assert count_sc_peaks(np.linspace(1, 2, 50), RATE_HZ) == (0, 0.0)

    def test_custom_rise(self):
        """Test that the rise threshold is configurable."""
        x = np.array([1.0, 1.2, 1.0, 1.02, 1.0])

        count, _ = count_sc_peaks(x, RATE_HZ, min_rise=0.01)

        assert count == 2


class TestScFeatures:
    """Tests for sc_features function."""

    def test_shape_moments_match_scipy(self):
        """Test skewness and excess kurtosis against scipy's biased estimators."""
        x = np.array([1.0, 2.0, 3.0, 4.0, 100.0])

        values = sc_features(x, RATE_HZ)

        assert values[7] == pytest.approx(stats.skew(x, bias=True), abs=1e-9)
        assert values[8] == pytest.approx(stats.kurtosis(x, fisher=True, bias=True), abs=1e-9)
        assert values[7] == pytest.approx(1.49754, abs=1e-4)
        assert values[8] == pytest.approx(0.24672, abs=1e-4)

    def test_random_window_matches_scipy(self):
        """Test the moments on a noisy window."""
        x = 3.0 + np.random.default_rng(0).gamma(2.0, 0.1, size=120)

        values = sc_features(x, RATE_HZ)

        assert values[1] == pytest.approx(np.std(x))
        assert values[7] == pytest.approx(stats.skew(x))
        assert values[8] == pytest.approx(stats.kurtosis(x))

    def test_constant_window_moments_are_zero(self):
        """Test that a constant window has zero skewness and kurtosis."""
        values = sc_features(np.full(120, 2.5), RATE_HZ)

        assert values.tolist() == [2.5, 0.0, 2.5, 2.5, 0.0, 0.0, 0.0, 0.0, 0.0]

    def test_too_short(self):
        """Test that three samples are not enough."""
        with pytest.raises(InsufficientSamplesError):
            sc_features(np.array([1.0, 2.0, 3.0]), RATE_HZ)


class TestExtractFeatures:
    """Tests for extract_features function."""

    def test_canonical_order(self):
        """Test that HR features come first, then SC features."""
        hr = np.linspace(60, 80, 120)
        sc = np.linspace(2, 3, 120)

        values = extract_features(hr, sc, RATE_HZ)

        assert values.shape == (N_FEATURES,)
        assert values[FEATURE_NAMES.index("hr_mean")] == pytest.approx(70.0)
        assert values[FEATURE_NAMES.index("sc_mean")] == pytest.approx(2.5)
        assert values[FEATURE_NAMES.index("sc_range")] == pytest.approx(1.0)

    def test_features_are_finite(self):
        """Test that random windows give finite features."""
        rng = np.random.default_rng(1)

        values = extract_features(
            70 + rng.normal(size=120), 3 + rng.random(120), RATE_HZ
        )

        assert np.isfinite(values).all()
