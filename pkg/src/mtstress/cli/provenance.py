"""The ``run.json`` provenance record of a run directory."""

from __future__ import annotations

import platform
from importlib.metadata import PackageNotFoundError, version
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, ConfigDict, Field

if TYPE_CHECKING:
    from pathlib import Path

RUN_FILE = "run.json"
TRACKED_PACKAGES = ("mtstress", "numpy", "scipy", "pandas", "pydantic")


class RunRecord(BaseModel):
    """Versions, seed, dataset and the validated config of every stage that ran."""

    model_config = ConfigDict(extra="forbid")

    versions: dict[str, str] = Field(default_factory=dict)
    seed: int | None = None
    dataset: str | None = None
    stages: dict[str, dict[str, Any]] = Field(default_factory=dict)


def package_versions() -> dict[str, str]:
    versions = {"python": platform.python_version()}
    for name in TRACKED_PACKAGES:
        try:
            versions[name] = version(name)
        except PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def read_run_record(run_dir: Path) -> RunRecord:
    """Existing record of ``run_dir``, or an empty one."""
    path = run_dir / RUN_FILE
    if not path.exists():
        return RunRecord()
    return RunRecord.model_validate_json(path.read_text(encoding="utf-8"))


def record_stage(
    run_dir: Path,
    stage: str,
    details: dict[str, Any],
    *,
    seed: int,
    dataset: str | None = None,
) -> RunRecord:
    """Add or replace ``stage`` in the run record and write it back."""
    record = read_run_record(run_dir)
    record.versions = package_versions()
    record.seed = seed
    if dataset is not None:
        record.dataset = dataset
    record.stages[stage] = details
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / RUN_FILE).write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return record
