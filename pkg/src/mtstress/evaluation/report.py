"""Rendering and reading of metrics reports (JSON, CSV, Markdown)."""

from __future__ import annotations

from enum import StrEnum
from typing import TYPE_CHECKING

import pandas as pd

from mtstress.evaluation.errors import ConsistencyError, UnsupportedFormatError
from mtstress.evaluation.families import MODEL_LABELS, ModelKind
from mtstress.evaluation.harness import MetricsReport, ModelScores, SubjectScore

if TYPE_CHECKING:
    from pathlib import Path

CSV_COLUMNS = ["dataset", "seed", "model", "subject_id", "f1", "kappa", "n_test"]


class ReportFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    MD = "md"


def parse_formats(value: str) -> list[ReportFormat]:
    """Parse a comma-separated format list such as ``"json,csv,md"``."""
    formats = []
    for item in value.split(","):
        name = item.strip().lower()
        if not name:
            continue
        try:
            formats.append(ReportFormat(name))
        except ValueError as e:
            raise UnsupportedFormatError(name) from e
    return formats


def _label(name: str) -> str:
    try:
        return MODEL_LABELS[ModelKind(name)]
    except ValueError:
        return name


def render_markdown(report: MetricsReport) -> str:
    """Model / F-Score / Kappa table, mean ± std across subjects."""
    n_subjects = len(report.models[0].per_subject) if report.models else 0
    lines = [
        f"Test set results on {report.dataset} (seed {report.seed}), "
        f"mean ± std over {n_subjects} subjects",
        "",
        "| Model | F-Score | Kappa |",
        "|-------|---------|-------|",
    ]
    lines.extend(
        f"| {_label(m.name)} | {m.mean_f1:.3f} ± {m.std_f1:.3f} "
        f"| {m.mean_kappa:.3f} ± {m.std_kappa:.3f} |"
        for m in report.models
    )
    return "\n".join(lines) + "\n"


def _to_frame(report: MetricsReport) -> pd.DataFrame:
    rows = [
        {"dataset": report.dataset, "seed": report.seed, "model": m.name, **s.model_dump()}
        for m in report.models
        for s in m.per_subject
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def render_report(report: MetricsReport, fmt: str, path: Path) -> Path:
    """Write ``report`` to ``path`` in ``fmt`` (``json``, ``csv`` or ``md``).

    The CSV has one row per model and subject.

    Raises
    ------
    UnsupportedFormatError
        If ``fmt`` is not a known format.

    """
    try:
        report_format = ReportFormat(fmt)
    except ValueError as e:
        raise UnsupportedFormatError(fmt) from e
    path.parent.mkdir(parents=True, exist_ok=True)
    match report_format:
        case ReportFormat.JSON:
            path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        case ReportFormat.CSV:
            _to_frame(report).to_csv(path, index=False, lineterminator="\n")
        case ReportFormat.MD:
            path.write_text(render_markdown(report), encoding="utf-8")
    return path


def read_report(path: Path) -> MetricsReport:
    """Read a JSON or CSV report; CSV aggregates are recomputed from its rows.

    Raises
    ------
    UnsupportedFormatError
        For any other file extension.
    ConsistencyError
        If a CSV mixes datasets or seeds.

    """
    match path.suffix.lower():
        case ".json":
            return MetricsReport.model_validate_json(path.read_text(encoding="utf-8"))
        case ".csv":
            table = pd.read_csv(
                path,
                dtype={"dataset": str, "model": str, "subject_id": str},
                keep_default_na=False,
                float_precision="round_trip",
            )
        case suffix:
            raise UnsupportedFormatError(suffix.lstrip("."))

    if table["dataset"].nunique() > 1 or table["seed"].nunique() > 1:
        msg = f"Report {path} mixes datasets or seeds"
        raise ConsistencyError(msg)
    models = [
        ModelScores.aggregate(
            str(name),
            [
                SubjectScore(
                    subject_id=row.subject_id,
                    f1=row.f1,
                    kappa=row.kappa,
                    n_test=row.n_test,
                )
                for row in group.itertuples(index=False)
            ],
        )
        for name, group in table.groupby("model", sort=False)
    ]
    return MetricsReport(
        dataset=str(table["dataset"].iloc[0]) if len(table) else "",
        seed=int(table["seed"].iloc[0]) if len(table) else 0,
        models=models,
    )
