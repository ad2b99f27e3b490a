"""Heart rate and skin conductance window features."""

import numpy as np
from scipy.signal import find_peaks

from mtstress.features.dataset import N_FEATURES, FeatureError

SCR_MIN_RISE_US = 0.05
# Below this second central moment a window is treated as constant
ZERO_VARIANCE = 1e-12


class InsufficientSamplesError(FeatureError):
    """Raised when a window is too short for a feature."""


def _require(x: np.ndarray, minimum: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.size < minimum:
        msg = f"{what} needs at least {minimum} samples, got {x.size}"
        raise InsufficientSamplesError(msg)
    return x


def hr_features(hr_window: np.ndarray) -> np.ndarray:
    """Seven heart rate features of a window.

    Returns
    -------
    np.ndarray
        ``[mean, std, min, max, range, rmssd, sdsd]``, where ``rmssd`` is the root
        mean square and ``sdsd`` the population standard deviation of successive
        differences. All standard deviations use ddof=0.

    Examples
    --------
    >>> hr_features(np.array([60.0, 62.0, 60.0]))[5:].tolist()
    [2.0, 2.0]

    """
    x = _require(hr_window, 2, "HR features")
    diffs = np.diff(x)
    low, high = x.min(), x.max()
    return np.array(
        [
            x.mean(),
            x.std(),
            low,
            high,
            high - low,
            np.sqrt(np.mean(diffs**2)),
            diffs.std(),
        ]
    )


def count_sc_peaks(
    sc_window: np.ndarray,
    sample_rate_hz: float,  # noqa: ARG001
    *,
    min_rise: float = SCR_MIN_RISE_US,
) -> tuple[int, float]:
    """Count skin conductance responses in a window.

    A response is a local maximum that rises at least ``min_rise`` above the lowest
    value since the previous local maximum (or the window start). The criterion is
    expressed in samples only, so the sample rate does not enter it.

    Returns
    -------
    tuple[int, float]
        Number of responses and their mean trough-to-peak amplitude (0 when none)

    """
    x = _require(sc_window, 3, "SC peak count")
    maxima, _ = find_peaks(x)
    amplitudes: list[float] = []
    previous = 0
    for peak in maxima:
        rise = x[peak] - x[previous:peak].min()
        if rise >= min_rise:
            amplitudes.append(float(rise))
        previous = int(peak)
    if not amplitudes:
        return 0, 0.0
    return len(amplitudes), float(np.mean(amplitudes))


def _shape_moments(x: np.ndarray) -> tuple[float, float]:
    """Skewness g1 and excess kurtosis from biased central moments."""
    centered = x - x.mean()
    m2 = np.mean(centered**2)
    if m2 < ZERO_VARIANCE:
        return 0.0, 0.0
    m3 = np.mean(centered**3)
    m4 = np.mean(centered**4)
    return float(m3 / m2**1.5), float(m4 / m2**2 - 3.0)


def sc_features(
    sc_window: np.ndarray,
    sample_rate_hz: float,
    *,
    min_rise: float = SCR_MIN_RISE_US,
) -> np.ndarray:
    """Nine skin conductance features of a window.

    Returns
    -------
    np.ndarray
        ``[mean, std, min, max, range, num_peaks, amplitude, skewness, kurtosis]``
        with population std and excess kurtosis; skewness and kurtosis are 0 for a
        constant window.

    """
    x = _require(sc_window, 4, "SC features")
    count, amplitude = count_sc_peaks(x, sample_rate_hz, min_rise=min_rise)
    skewness, kurtosis = _shape_moments(x)
    low, high = x.min(), x.max()
    return np.array(
        [
            x.mean(),
            x.std(),
            low,
            high,
            high - low,
            float(count),
            amplitude,
            skewness,
            kurtosis,
        ]
    )


def extract_features(
    hr_window: np.ndarray, sc_window: np.ndarray, sample_rate_hz: float
) -> np.ndarray:
    """The full 16-feature vector of one window, in canonical order."""
    values = np.concatenate(
        (hr_features(hr_window), sc_features(sc_window, sample_rate_hz))
    )
    if values.shape != (N_FEATURES,) or not np.isfinite(values).all():
        msg = "Feature extraction produced non-finite values"
        raise FeatureError(msg)
    return values
