"""Synthetic multi-subject heart rate and skin conductance recordings.

Every subject alternates baseline and stress segments. Stress raises the heart rate
of every subject by the same amount and makes skin conductance responses more
frequent. On top of that each subject reacts along its own direction: stress scales
its beat-to-beat heart rate variability by ``exp(hrv_response * cos(theta))`` and
shifts its tonic skin conductance by ``tonic_sc_response_us * sin(theta)``, with
``theta`` drawn per subject. The personal part cancels out when subjects are pooled,
so a personalized classifier can use it and a pooled one mostly cannot.

``response_spread`` additionally varies the size of the heart rate and skin
conductance response across subjects; it is off by default.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.signal import lfilter

from mtstress.dataset.io import write_hr_stream, write_manifest, write_recording, write_spans
from mtstress.dataset.models import (
    TRIAL_TEMPLATES,
    DatasetManifest,
    LabelMode,
    LabelSpan,
    SubjectEntry,
    SubjectRecording,
    labels_from_spans,
)
from mtstress.dataset.preprocessing import SC_RANGE_US
from mtstress.rng import stream

logger = logging.getLogger(__name__)

SYNTH_STREAM = 5
RESTING_HR_BPM = 70.0
HR_CLIP_BPM = (40.0, 200.0)
SC_FLOOR_US = 0.05
TONIC_SC_US = (2.0, 8.0)
SCR_DECAY_S = 4.0
SCR_MIN_AMPLITUDE_US = 0.1
SCR_AMPLITUDE_SCALE_US = 0.3
WANDER_S = 60.0
TONIC_LAG_S = 20.0
MARKER_HEIGHT = 5.0
MARKER_NOISE = 0.05
MIN_SEGMENT_S = 120.0


class SynthError(Exception):
    """Base exception for synthetic data generation errors."""


class BadConfigError(SynthError):
    """Raised when a generator configuration cannot produce a valid dataset."""


class SynthConfig(BaseModel):
    """Generator settings.

    Attributes
    ----------
    n_subjects : int
        Number of subjects
    duration_s : float
        Length of every recording
    sample_rate_hz : float
        Rate of the recording files
    seed : int
        Master seed; subject ``i`` draws from its own stream under it
    subject_offset_std : float
        Spread of resting heart rate across subjects, bpm
    stress_hr_delta : float
        Heart rate increase under stress, bpm
    response_spread : float
        Spread of the per-subject heart rate response gain around 1 (clipped at 0)
        and of the skin conductance responsiveness below 1; 0 gives every subject
        exactly ``stress_hr_delta`` and ``stress_scr_rate_hz``
    hrv_response : float
        Largest log change of beat-to-beat heart rate variability under stress
    tonic_sc_response_us : float
        Largest tonic skin conductance shift under stress, microsiemens
    stress_scr_rate_hz, baseline_scr_rate_hz : float
        Skin conductance response rates under stress and at baseline
    noise_std : float
        Heart rate noise, half white and half slowly wandering, bpm
    sc_noise_std : float
        White skin conductance noise, microsiemens
    sc_drift_std_us : float
        Slow tonic skin conductance drift, microsiemens
    segment_s : float
        Length of each baseline or stress segment
    label_mode : str
        ``span-file`` writes span files, ``marker-derived`` a marker channel
    hr_sample_rate_hz : float | None
        When set, heart rate goes to a separate file at this lower rate
    name : str
        Dataset name written to the manifest

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_subjects: int = Field(default=10, ge=1)
    duration_s: float = Field(default=1800.0, gt=0)
    sample_rate_hz: float = Field(default=4.0, gt=0)
    seed: int = Field(default=0, ge=0)
    subject_offset_std: float = Field(default=8.0, ge=0)
    stress_hr_delta: float = Field(default=3.0, gt=0)
    response_spread: float = Field(default=0.0, ge=0)
    hrv_response: float = Field(default=0.25, ge=0)
    tonic_sc_response_us: float = Field(default=0.3, ge=0)
    stress_scr_rate_hz: float = Field(default=0.06, gt=0)
    baseline_scr_rate_hz: float = Field(default=0.03, gt=0)
    noise_std: float = Field(default=3.0, ge=0)
    sc_noise_std: float = Field(default=0.01, ge=0)
    sc_drift_std_us: float = Field(default=0.1, ge=0)
    segment_s: float = Field(default=300.0, ge=MIN_SEGMENT_S)
    label_mode: Literal["span-file", "marker-derived"] = "span-file"
    hr_sample_rate_hz: float | None = Field(default=None, gt=0)
    name: str = Field(default="synthetic", min_length=1)

    @model_validator(mode="after")
    def _check_config(self) -> Self:
        n_segments = self.n_segments
        if n_segments < 2:  # noqa: PLR2004
            msg = (
                f"duration_s={self.duration_s} holds fewer than two segments of "
                f"{self.segment_s} s"
            )
            raise ValueError(msg)
        if self.label_mode == "marker-derived" and n_segments > len(
            TRIAL_TEMPLATES["alternating"]
        ):
            msg = f"Marker-derived datasets support at most 64 segments, got {n_segments}"
            raise ValueError(msg)
        if self.hr_sample_rate_hz is not None and self.hr_sample_rate_hz > self.sample_rate_hz:
            msg = "hr_sample_rate_hz must not exceed sample_rate_hz"
            raise ValueError(msg)
        return self

    @property
    def n_segments(self) -> int:
        return math.floor(self.duration_s / self.segment_s)


def subject_id(index: int) -> str:
    return f"S{index + 1:02d}"


def segment_spans(cfg: SynthConfig) -> list[LabelSpan]:
    """Alternating baseline/stress spans; the last one runs to the end."""
    bounds = [k * cfg.segment_s for k in range(cfg.n_segments)] + [cfg.duration_s]
    return [
        LabelSpan(start_s=start, end_s=end, label=k % 2)  # type: ignore[arg-type]
        for k, (start, end) in enumerate(zip(bounds[:-1], bounds[1:], strict=True))
    ]


def _wander(rng: np.random.Generator, n: int, fs: float) -> np.ndarray:
    """Unit-variance AR(1) noise with a correlation time of WANDER_S."""
    phi = math.exp(-1.0 / (fs * WANDER_S))
    innovations = rng.standard_normal(n)
    start = rng.standard_normal()
    wander, _ = lfilter([math.sqrt(1.0 - phi**2)], [1.0, -phi], innovations, zi=[phi * start])
    return wander


def _scr_train(
    rng: np.random.Generator, rate_hz: np.ndarray, fs: float
) -> np.ndarray:
    """Skin conductance responses: instant rise, exponential decay."""
    events = rng.random(len(rate_hz)) < rate_hz / fs
    amplitudes = SCR_MIN_AMPLITUDE_US + rng.exponential(SCR_AMPLITUDE_SCALE_US, len(rate_hz))
    impulses = np.where(events, amplitudes, 0.0)
    return lfilter([1.0], [1.0, -math.exp(-1.0 / (fs * SCR_DECAY_S))], impulses)


def _marker_channel(
    rng: np.random.Generator, spans: list[LabelSpan], n: int, fs: float
) -> np.ndarray:
    marker = MARKER_NOISE * rng.standard_normal(n)
    presses = [1] + [round(s.start_s * fs) for s in spans[1:]] + [n - 2]
    marker[presses] = MARKER_HEIGHT
    return marker


def generate_subject(cfg: SynthConfig, index: int) -> tuple[SubjectRecording, list[LabelSpan]]:
    """Generate subject ``index`` of the dataset described by ``cfg``.

    Returns
    -------
    tuple[SubjectRecording, list[LabelSpan]]
        The recording (with a marker channel in marker-derived mode) and its true
        baseline/stress spans

    Raises
    ------
    BadConfigError
        If ``index`` is outside ``[0, n_subjects)``.

    """
    if not 0 <= index < cfg.n_subjects:
        msg = f"Subject index {index} outside [0, {cfg.n_subjects})"
        raise BadConfigError(msg)
    rng = stream(cfg.seed, SYNTH_STREAM, index)
    fs = cfg.sample_rate_hz
    n = round(cfg.duration_s * fs)
    t = np.arange(n) / fs
    spans = segment_spans(cfg)
    stress = (labels_from_spans(t, spans) == 1).astype(float)

    resting_hr = RESTING_HR_BPM + cfg.subject_offset_std * rng.standard_normal()
    gain = max(0.0, 1.0 + cfg.response_spread * rng.standard_normal())
    responsiveness = float(np.clip(1.0 + cfg.response_spread * rng.standard_normal(), 0, 1))
    tonic_sc = rng.uniform(*TONIC_SC_US)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    hrv_log_scale = cfg.hrv_response * math.cos(theta)
    tonic_shift = cfg.tonic_sc_response_us * math.sin(theta)

    beat_noise = rng.standard_normal(n) * np.exp(hrv_log_scale * stress)
    noise = math.sqrt(0.5) * (beat_noise + _wander(rng, n, fs))
    hr = resting_hr + gain * cfg.stress_hr_delta * stress + cfg.noise_std * noise
    hr = np.clip(hr, *HR_CLIP_BPM)

    stress_rate = cfg.baseline_scr_rate_hz + responsiveness * (
        cfg.stress_scr_rate_hz - cfg.baseline_scr_rate_hz
    )
    rate = np.where(stress > 0, stress_rate, cfg.baseline_scr_rate_hz)
    # first-order lag, so the tonic shift never forms a peak of its own
    lag = math.exp(-1.0 / (fs * TONIC_LAG_S))
    tonic = tonic_sc + tonic_shift * lfilter([1.0 - lag], [1.0, -lag], stress)
    sc = (
        tonic
        + cfg.sc_drift_std_us * _wander(rng, n, fs)
        + _scr_train(rng, rate, fs)
        + cfg.sc_noise_std * rng.standard_normal(n)
    )
    sc = np.clip(sc, SC_FLOOR_US, SC_RANGE_US[1])

    marker = _marker_channel(rng, spans, n, fs) if cfg.label_mode == "marker-derived" else None
    logger.debug(
        "Subject %d: resting HR %.1f, gain %.2f, SCR responsiveness %.2f, "
        "HRV log scale %.2f, tonic SC shift %.2f",
        index,
        resting_hr,
        gain,
        responsiveness,
        hrv_log_scale,
        tonic_shift,
    )
    recording = SubjectRecording(
        subject_id=subject_id(index), sample_rate_hz=fs, hr=hr, sc=sc, marker=marker
    )
    return recording, spans


def _write_subject(cfg: SynthConfig, index: int, out_dir: Path) -> SubjectEntry:
    recording, spans = generate_subject(cfg, index)
    sid = recording.subject_id
    path = f"{sid}.csv"
    spans_path = hr_path = None
    if cfg.hr_sample_rate_hz is not None:
        hr_path = f"{sid}_hr.csv"
        t_hr = np.arange(0.0, cfg.duration_s, 1.0 / cfg.hr_sample_rate_hz)
        write_hr_stream(t_hr, np.interp(t_hr, recording.times, recording.hr), out_dir / hr_path)
    write_recording(recording, out_dir / path, include_hr=hr_path is None)
    if cfg.label_mode == "span-file":
        spans_path = f"{sid}_spans.csv"
        write_spans(spans, out_dir / spans_path)
    return SubjectEntry(subject_id=sid, path=path, spans_path=spans_path, hr_path=hr_path)


def generate_dataset(cfg: SynthConfig, out_dir: Path, jobs: int = 1) -> Path:
    """Write recordings, span files and a manifest for ``cfg`` into ``out_dir``.

    Marker-derived datasets use the ``alternating`` template without buffers.

    Returns
    -------
    Path
        Path of the written ``manifest.json``

    Raises
    ------
    OSError
        If ``out_dir`` cannot be written.

    """
    out_dir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        entries = list(pool.map(lambda i: _write_subject(cfg, i, out_dir), range(cfg.n_subjects)))

    marker_mode = cfg.label_mode == "marker-derived"
    manifest = DatasetManifest(
        name=cfg.name,
        sample_rate_hz=cfg.sample_rate_hz,
        label_mode=LabelMode.MARKER if marker_mode else LabelMode.SPAN_FILE,
        trial_template="alternating" if marker_mode else None,
        buffer_s=0.0,
        subjects=entries,
    )
    manifest_path = out_dir / "manifest.json"
    write_manifest(manifest, manifest_path)
    logger.info("Wrote %d synthetic subjects to %s", cfg.n_subjects, out_dir)
    return manifest_path

