"""Unit tests for model checkpoints."""

import json
from pathlib import Path

import numpy as np
import pytest

from mtstress.checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from mtstress.evaluation.families import ModelKind, PerSubjectModel, fit_model
from mtstress.features.dataset import WindowedDataset
from mtstress.nn.network import MtlNetwork
from mtstress.nn.training import TrainConfig

CASES = [
    (ModelKind.LR, {"l2_lambda": 1e-3}, False),
    (ModelKind.SVM_L, {"C": 1.0}, False),
    (ModelKind.SVM_RBF, {"C": 1.0, "gamma": 0.1}, False),
    (ModelKind.SVM_RBF, {"C": 1.0, "gamma": 0.1}, True),
    (ModelKind.ST_NN, {"l2_lambda": 1e-3}, False),
    (ModelKind.MT_NN, {"l2_lambda": 1e-3}, False),
]


def predictions(model, ds: WindowedDataset) -> dict[str, list[int]]:
    return {sid: model.predict(w.X, sid).tolist() for sid, w in ds.subjects.items()}


class TestCheckpoint:
    """Tests for save_checkpoint and load_checkpoint functions."""

    @pytest.mark.parametrize(("kind", "params", "per_subject"), CASES)
    def test_round_trip_predictions(
        self,
        tmp_path: Path,
        feature_dataset: WindowedDataset,
        kind: ModelKind,
        params: dict,
        per_subject: bool,  # noqa: FBT001
    ):
        """Test that a reloaded model predicts exactly like the original."""
        model = fit_model(
            kind,
            feature_dataset,
            params,
            seed=1,
            train_cfg=TrainConfig(max_epochs=2),
            per_subject=per_subject,
        )
        path = save_checkpoint(model, tmp_path / f"{kind}.json", dataset="unit", seed=1)

        ckpt, loaded = load_checkpoint(path)

        assert ckpt.model == kind
        assert ckpt.dataset == "unit"
        assert ckpt.seed == 1
        assert ckpt.hyperparameters == params
        assert loaded.kind == kind
        assert predictions(loaded, feature_dataset) == predictions(model, feature_dataset)
        assert np.array_equal(loaded.standardizer.scale, model.standardizer.scale)
        if per_subject:
            assert isinstance(loaded.model, PerSubjectModel)

    def test_network_weights_exact(self, tmp_path: Path, feature_dataset: WindowedDataset):
        """Test that network parameters survive bit for bit."""
        model = fit_model(
            ModelKind.MT_NN,
            feature_dataset,
            {"l2_lambda": 1e-3},
            seed=2,
            train_cfg=TrainConfig(max_epochs=2),
        )
        path = save_checkpoint(model, tmp_path / "mt-nn.json", dataset="unit", seed=2)

        ckpt, loaded = load_checkpoint(path)

        assert isinstance(model.model, MtlNetwork)
        assert isinstance(loaded.model, MtlNetwork)
        for key, value in model.model.parameters().items():
            assert np.array_equal(loaded.model.parameters()[key], value), key
        assert ckpt.payload.kind == "mtl-network"
        assert ckpt.payload.epochs_run == 2
        assert ckpt.payload.train_config["max_epochs"] == 2

    def test_tampered_weights(self, tmp_path: Path, feature_dataset: WindowedDataset):
        """Test that a changed parameter fails the checksum."""
        model = fit_model(ModelKind.LR, feature_dataset, {"l2_lambda": 1e-3}, seed=0)
        path = save_checkpoint(model, tmp_path / "lr.json", dataset="unit", seed=0)
        document = json.loads(path.read_text(encoding="utf-8"))
        document["payload"]["weights"][0] += 1e-9
        path.write_text(json.dumps(document), encoding="utf-8")

        with pytest.raises(CheckpointError, match="checksum"):
            load_checkpoint(path)

    def test_tampered_scaling(self, tmp_path: Path, feature_dataset: WindowedDataset):
        """Test that the feature standardisation is covered by the checksum."""
        model = fit_model(ModelKind.SVM_L, feature_dataset, {"C": 1.0}, seed=0)
        path = save_checkpoint(model, tmp_path / "svm-l.json", dataset="unit", seed=0)
        document = json.loads(path.read_text(encoding="utf-8"))
        document["feature_scale"][3] *= 2
        path.write_text(json.dumps(document), encoding="utf-8")

        with pytest.raises(CheckpointError, match="checksum"):
            load_checkpoint(path)

    def test_invalid_file(self, tmp_path: Path):
        """Test that a file that is not a checkpoint is rejected."""
        path = tmp_path / "lr.json"
        path.write_text('{"model": "lr"}', encoding="utf-8")

        with pytest.raises(CheckpointError, match="Invalid checkpoint"):
            load_checkpoint(path)
