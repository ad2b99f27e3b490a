"""K-fold cross-validation for hyper-parameter selection."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from mtstress.baselines.errors import BaselineError
from mtstress.evaluation.errors import EvaluationError, FoldError
from mtstress.evaluation.families import (
    Hyperparams,
    ModelKind,
    fit_model,
    param_grid,
    predict_labels,
    sort_by_strength,
)
from mtstress.evaluation.metrics import ConfusionMatrix, f1_score
from mtstress.nn.errors import NetworkError
from mtstress.rng import derive_seed

if TYPE_CHECKING:
    from mtstress.evaluation.splits import SplitManifest
    from mtstress.features.dataset import WindowedDataset
    from mtstress.nn.training import TrainConfig

logger = logging.getLogger(__name__)

CV_STREAM = 4


@dataclass
class GridPointScores:
    params: Hyperparams
    fold_f1: list[float] = field(default_factory=list)

    @property
    def mean_f1(self) -> float:
        return float(np.mean(self.fold_f1))


@dataclass
class CvResult:
    """Validation F1 of every grid point and the selected hyper-parameters."""

    kind: ModelKind
    grid: list[GridPointScores]
    best: GridPointScores

    @property
    def best_params(self) -> Hyperparams:
        return self.best.params


def run_cv(
    kind: ModelKind,
    ds: WindowedDataset,
    split: SplitManifest,
    grid: list[Hyperparams] | None = None,
    *,
    train_cfg: TrainConfig | None = None,
    per_subject: bool = False,
    jobs: int = 1,
) -> CvResult:
    """Select hyper-parameters of ``kind`` by cross-validation on the training split.

    For every grid point and fold, a model is trained on the other folds of every
    subject and scored by the F1 of its predictions on the held-out fold, pooled over
    subjects. The grid point with the highest mean F1 wins; ties go to the stronger
    regularisation. Fold ``k`` trains with the seed derived from the split seed and
    ``k`` whatever the grid point, and jobs run on up to ``jobs`` threads.

    Raises
    ------
    FoldError
        If training fails in a fold; it names the fold and grid point.

    """
    points = sort_by_strength(grid if grid is not None else param_grid(kind))
    if not points:
        msg = "Cross-validation needs at least one grid point"
        raise EvaluationError(msg)
    folds = [split.fold_sets(ds, k) for k in range(split.n_folds)]

    def _score(params: Hyperparams, k: int) -> float:
        train, val = folds[k]
        try:
            model = fit_model(
                kind,
                train,
                params,
                seed=derive_seed(split.seed, CV_STREAM, k),
                train_cfg=train_cfg,
                per_subject=per_subject,
            )
        except (NetworkError, BaselineError) as e:
            raise FoldError(k, params, e) from e
        cm = ConfusionMatrix()
        for y_true, y_pred in predict_labels(model, val).values():
            cm += ConfusionMatrix.from_labels(y_true, y_pred)
        return f1_score(cm)

    jobs_list = [(p, k) for p in points for k in range(split.n_folds)]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        scores = list(pool.map(lambda job: _score(*job), jobs_list))

    results = [
        GridPointScores(p, scores[i * split.n_folds : (i + 1) * split.n_folds])
        for i, p in enumerate(points)
    ]
    for result in results:
        logger.debug("%s %s: mean validation F1 %.4f", kind, result.params, result.mean_f1)
    # max keeps the first of equal scores, which is the strongest regularisation
    best = max(results, key=lambda r: r.mean_f1)
    logger.info("%s: selected %s (mean validation F1 %.4f)", kind, best.params, best.mean_f1)
    return CvResult(kind=kind, grid=results, best=best)
