"""Subcommand implementations; each takes a validated RunConfig and returns an exit code."""

from __future__ import annotations

import errno
import logging
import sys
from typing import TYPE_CHECKING

from mtstress.checkpoint import load_checkpoint, save_checkpoint
from mtstress.cli.provenance import read_run_record, record_stage
from mtstress.dataset.models import DatasetError
from mtstress.dataset.pipeline import load_dataset
from mtstress.evaluation.cv import run_cv
from mtstress.evaluation.errors import ConsistencyError
from mtstress.evaluation.families import ModelKind, TrainedModel, fit_model
from mtstress.evaluation.harness import evaluate_all
from mtstress.evaluation.report import render_markdown, render_report
from mtstress.evaluation.splits import SplitManifest, make_split
from mtstress.features.io import (
    read_features,
    write_baseline_stats,
    write_features,
)
from mtstress.features.normalization import baseline_normalize
from mtstress.features.pipeline import featurize_dataset
from mtstress.rng import derive_seed
from mtstress.synth import generate_dataset

if TYPE_CHECKING:
    from pathlib import Path

    from mtstress.cli.schemas import RunConfig
    from mtstress.features.dataset import WindowedDataset

logger = logging.getLogger(__name__)

FINAL_STREAM = 6


def _echo(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _require_file(path: Path, what: str) -> None:
    if not path.is_file():
        raise FileNotFoundError(errno.ENOENT, f"{what} not found", str(path))


def _read_features(cfg: RunConfig) -> WindowedDataset:
    _require_file(cfg.features_path, "Feature file")
    return read_features(
        cfg.features_path,
        window_len_s=cfg.featurize.window_s,
        step_s=cfg.featurize.step_s,
    )


def _dataset_name(cfg: RunConfig) -> str:
    if cfg.dataset_name:
        return cfg.dataset_name
    return read_run_record(cfg.run_dir).dataset or cfg.features_path.stem


def cmd_synth(cfg: RunConfig) -> int:
    """Write a synthetic dataset and print its manifest path."""
    manifest_path = generate_dataset(cfg.synth, cfg.data_dir, jobs=cfg.jobs)
    record_stage(
        cfg.run_dir,
        "synth",
        {"config": cfg.synth.model_dump(mode="json"), "manifest": str(manifest_path)},
        seed=cfg.master_seed,
        dataset=cfg.synth.name,
    )
    _echo(str(manifest_path))
    return 0


def cmd_featurize(cfg: RunConfig) -> int:
    """Load, window, featurize and baseline-normalize every subject of a manifest.

    Subjects that fail to load, yield no window or have no baseline window are
    reported and skipped; the command fails only if no subject remains.
    """
    manifest_path = cfg.manifest or cfg.data_dir / "manifest.json"
    _require_file(manifest_path, "Manifest")
    loaded = load_dataset(manifest_path, jobs=cfg.jobs)
    window_s, step_s = cfg.featurize.window_s, cfg.featurize.step_s
    result = featurize_dataset(loaded.subjects, window_s, step_s, jobs=cfg.jobs)

    failures = {**loaded.failures, **result.failures}
    usable = {}
    for sid, windows in result.dataset.subjects.items():
        if (windows.y == 0).any():
            usable[sid] = windows
        else:
            logger.warning("Skipping subject %s: no baseline windows", sid)
            failures[sid] = "no baseline windows"
    if not usable:
        msg = f"No subject of {manifest_path} produced baseline and stress windows"
        raise DatasetError(msg)

    normalized, stats = baseline_normalize(result.dataset.replace_subjects(usable))
    write_features(normalized, cfg.features_path)
    write_baseline_stats(stats, cfg.baseline_stats_path)

    _echo(f"window {window_s:g} s, step {step_s:g} s")
    for sid in usable:
        counts = result.counts[sid]
        _echo(
            f"{sid}: {counts.kept} windows ({counts.baseline} baseline, "
            f"{counts.stress} stress), dropped {counts.dropped_tie} tie, "
            f"{counts.dropped_unlabeled} unlabeled"
        )
    for sid, reason in failures.items():
        _echo(f"{sid}: skipped ({reason})")

    record_stage(
        cfg.run_dir,
        "featurize",
        {
            "manifest": str(manifest_path),
            "config": cfg.featurize.model_dump(),
            "subjects": list(usable),
            "failures": failures,
        },
        seed=cfg.master_seed,
        dataset=loaded.manifest.name,
    )
    return 0


def cmd_train(cfg: RunConfig) -> int:
    """Split the features, select hyper-parameters by CV and train each model kind."""
    ds = _read_features(cfg)
    dataset = _dataset_name(cfg)
    seed = cfg.master_seed
    split = make_split(ds, seed, dataset=dataset)
    cfg.run_dir.mkdir(parents=True, exist_ok=True)
    cfg.split_path.write_text(split.model_dump_json(indent=2) + "\n", encoding="utf-8")
    train_set = split.train_set(ds)

    trained = dict(read_run_record(cfg.run_dir).stages.get("train", {}).get("models", {}))
    for kind in cfg.model_kinds:
        per_subject = cfg.per_subject_baselines and not kind.is_network
        cv = run_cv(
            kind, ds, split, train_cfg=cfg.train, per_subject=per_subject, jobs=cfg.jobs
        )
        model = fit_model(
            kind,
            train_set,
            cv.best_params,
            seed=derive_seed(seed, FINAL_STREAM, list(ModelKind).index(kind)),
            train_cfg=cfg.train,
            per_subject=per_subject,
        )
        path = save_checkpoint(model, cfg.model_path(kind), dataset=dataset, seed=seed)
        trained[kind.value] = {
            "params": cv.best_params,
            "per_subject": per_subject,
            "cv": [{"params": p.params, "fold_f1": p.fold_f1} for p in cv.grid],
        }
        _echo(f"{kind}: {cv.best_params} (validation F1 {cv.best.mean_f1:.3f}) -> {path}")

    record_stage(
        cfg.run_dir,
        "train",
        {"train_config": cfg.train.model_dump(), "models": trained},
        seed=seed,
        dataset=dataset,
    )
    return 0


def _load_models(cfg: RunConfig, split: SplitManifest) -> dict[str, TrainedModel]:
    if cfg.models is None:
        kinds = [k for k in ModelKind if cfg.model_path(k).is_file()]
        if not kinds:
            raise FileNotFoundError(
                errno.ENOENT, "No checkpoints found", str(cfg.run_dir / "models")
            )
    else:
        kinds = cfg.models
    models: dict[str, TrainedModel] = {}
    for kind in kinds:
        path = cfg.model_path(kind)
        _require_file(path, f"{kind} checkpoint")
        ckpt, model = load_checkpoint(path)
        if ckpt.seed != split.seed or ckpt.dataset != split.dataset:
            msg = (
                f"{path} was trained on {ckpt.dataset!r} with seed {ckpt.seed}, "
                f"split is {split.dataset!r} with seed {split.seed}"
            )
            raise ConsistencyError(msg)
        models[kind.value] = model
    return models


def cmd_evaluate(cfg: RunConfig) -> int:
    """Score trained checkpoints on the test split and write the report."""
    _require_file(cfg.split_path, "Split manifest")
    split = SplitManifest.model_validate_json(cfg.split_path.read_text(encoding="utf-8"))
    if cfg.seed is not None and cfg.seed != split.seed:
        msg = f"Run seed {cfg.seed} differs from split seed {split.seed}"
        raise ConsistencyError(msg)
    ds = _read_features(cfg)
    models = _load_models(cfg, split)
    report = evaluate_all(models, ds, split)

    written = [render_report(report, fmt, cfg.report_path(fmt)) for fmt in cfg.formats]
    _echo(render_markdown(report).rstrip("\n"))
    record_stage(
        cfg.run_dir,
        "evaluate",
        {"models": list(models), "reports": [str(p) for p in written]},
        seed=split.seed,
        dataset=split.dataset,
    )
    return 0


def cmd_pipeline(cfg: RunConfig) -> int:
    """Synthesise (unless a manifest is given), featurize, train and evaluate."""
    if cfg.manifest is None:
        cmd_synth(cfg)
    for stage in (cmd_featurize, cmd_train, cmd_evaluate):
        stage(cfg)
    return 0


COMMANDS = {
    "synth": cmd_synth,
    "featurize": cmd_featurize,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "pipeline": cmd_pipeline,
}
