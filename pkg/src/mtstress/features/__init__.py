"""Features package: windows, physiological features and normalization."""

from mtstress.features.dataset import (
    FEATURE_NAMES,
    N_FEATURES,
    FeatureError,
    FeatureVector,
    SubjectWindows,
    WindowedDataset,
)
from mtstress.features.extraction import (
    InsufficientSamplesError,
    count_sc_peaks,
    extract_features,
    hr_features,
    sc_features,
)
from mtstress.features.io import (
    FeatureFileError,
    read_baseline_stats,
    read_features,
    write_baseline_stats,
    write_features,
)
from mtstress.features.normalization import (
    AlreadyNormalizedError,
    BaselineStats,
    NoBaselineWindowsError,
    Standardizer,
    baseline_normalize,
)
from mtstress.features.pipeline import (
    FeaturizeResult,
    NoWindowsError,
    WindowCounts,
    featurize_dataset,
    featurize_subject,
)
from mtstress.features.windows import (
    DEFAULT_STEP_S,
    DEFAULT_WINDOW_S,
    BadWindowParamsError,
    Window,
    slide_windows,
)

__all__ = [
    "DEFAULT_STEP_S",
    "DEFAULT_WINDOW_S",
    "FEATURE_NAMES",
    "N_FEATURES",
    "AlreadyNormalizedError",
    "BadWindowParamsError",
    "BaselineStats",
    "FeatureError",
    "FeatureFileError",
    "FeatureVector",
    "FeaturizeResult",
    "InsufficientSamplesError",
    "NoBaselineWindowsError",
    "NoWindowsError",
    "Standardizer",
    "SubjectWindows",
    "Window",
    "WindowCounts",
    "WindowedDataset",
    "baseline_normalize",
    "count_sc_peaks",
    "extract_features",
    "featurize_dataset",
    "featurize_subject",
    "hr_features",
    "read_baseline_stats",
    "read_features",
    "sc_features",
    "slide_windows",
    "write_baseline_stats",
    "write_features",
]
