"""Validated per-run configuration of the command-line interface."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from mtstress.evaluation.families import ModelKind
from mtstress.evaluation.report import ReportFormat, parse_formats
from mtstress.features.windows import DEFAULT_STEP_S, DEFAULT_WINDOW_S
from mtstress.nn.training import TrainConfig
from mtstress.settings import settings
from mtstress.synth import SynthConfig

if TYPE_CHECKING:
    from pydantic import ValidationInfo

Command = Literal["synth", "featurize", "train", "evaluate", "pipeline"]


class FeaturizeConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    window_s: float = Field(default=DEFAULT_WINDOW_S, gt=0)
    step_s: float = Field(default=DEFAULT_STEP_S, gt=0)

    @field_validator("step_s")
    @classmethod
    def _step_within_window(cls, value: float, info: ValidationInfo) -> float:
        window = info.data.get("window_s")
        if window is not None and value > window:
            msg = f"step of {value:g} s exceeds the {window:g} s window"
            raise ValueError(msg)
        return value


class RunConfig(BaseModel):
    """Everything one CLI invocation needs, merged from ``--config`` and flags.

    Attributes
    ----------
    command : str
        Subcommand to run
    seed : int | None
        Master seed of the run (synthesis, splits, initialisation, sampling);
        unset means 0, except that evaluate then accepts any trained seed
    jobs : int
        Worker threads for per-subject and per-fold work
    run_dir : Path
        Directory that receives all outputs of the run
    out : Path | None
        Output directory of synthesised data; defaults to ``run_dir / "data"``
    manifest : Path | None
        Dataset manifest to featurize
    features : Path | None
        Feature CSV to train or evaluate on; defaults to ``run_dir / "features.csv"``
    dataset_name : str | None
        Dataset name override for features without a featurize record
    models : list[ModelKind] | None
        Model kinds to train or evaluate; unset means all kinds for training and
        every trained checkpoint for evaluation
    formats : list[ReportFormat]
        Report formats to write
    per_subject_baselines : bool
        Train one baseline classifier per subject instead of a pooled one

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    seed: int | None = Field(default=None, ge=0)
    jobs: int = Field(default=settings.jobs, ge=1)
    run_dir: Path = settings.run_path
    out: Path | None = None
    manifest: Path | None = None
    features: Path | None = None
    dataset_name: str | None = None
    models: list[ModelKind] | None = Field(default=None, min_length=1)
    formats: list[ReportFormat] = Field(
        default_factory=lambda: parse_formats(settings.report_formats), min_length=1
    )
    per_subject_baselines: bool = False
    synth: SynthConfig = SynthConfig()
    featurize: FeaturizeConfig = FeaturizeConfig()
    train: TrainConfig = TrainConfig()

    @field_validator("models", mode="before")
    @classmethod
    def _split_models(cls, value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, str):
            if value.strip() == "all":
                return list(ModelKind)
            return [v.strip() for v in value.split(",") if v.strip()]
        return value

    @field_validator("formats", mode="before")
    @classmethod
    def _split_formats(cls, value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, str):
            return [v.strip().lower() for v in value.split(",") if v.strip()]
        return value

    @property
    def master_seed(self) -> int:
        return 0 if self.seed is None else self.seed

    @property
    def model_kinds(self) -> list[ModelKind]:
        return list(ModelKind) if self.models is None else self.models

    @property
    def data_dir(self) -> Path:
        return self.out or self.run_dir / "data"

    @property
    def features_path(self) -> Path:
        return self.features or self.run_dir / "features.csv"

    @property
    def baseline_stats_path(self) -> Path:
        return self.run_dir / "baseline_stats.json"

    @property
    def split_path(self) -> Path:
        return self.run_dir / "split.json"

    def model_path(self, kind: ModelKind) -> Path:
        return self.run_dir / "models" / f"{kind}.json"

    def report_path(self, fmt: ReportFormat) -> Path:
        return self.run_dir / f"report.{fmt}"


def merge_config(file_values: dict[str, Any], flag_values: dict[str, Any]) -> dict[str, Any]:
    """Overlay dotted flag keys (``synth.n_subjects``) onto nested file values.

    Flags win over the file. When the synth section sets no seed of its own it
    inherits the run seed.
    """
    merged: dict[str, Any] = {
        k: dict(v) if isinstance(v, dict) else v for k, v in file_values.items()
    }
    for key, value in flag_values.items():
        section, _, field = key.rpartition(".")
        target = merged.setdefault(section, {}) if section else merged
        target[field] = value
    if "seed" in merged:
        synth = merged.setdefault("synth", {})
        if isinstance(synth, dict):
            synth.setdefault("seed", merged["seed"])
    return merged
