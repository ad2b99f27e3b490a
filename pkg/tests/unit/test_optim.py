"""Unit tests for the Adam optimizer."""

import numpy as np
import pytest

from mtstress.nn.errors import ShapeMismatchError
from mtstress.nn.optim import AdamState, adam_step


def test_first_step_moves_by_learning_rate():
    """Test that the first bias-corrected step has size lr in the gradient's sign."""
    params = {"w": np.array([0.0, 1.0])}

    adam_step(AdamState(), params, {"w": np.array([1.0, -3.0])})

    assert params["w"].tolist() == pytest.approx([-0.001, 1.001])


def test_updates_in_place():
    """Test that the caller's arrays are modified, not replaced."""
    weights = np.zeros(3)
    params = {"w": weights}

    adam_step(AdamState(lr=0.1), params, {"w": np.ones(3)})

    assert params["w"] is weights
    assert weights.tolist() == pytest.approx([-0.1] * 3)


def test_only_keys_with_gradients_change():
    """Test that parameters without a gradient keep their value and state."""
    params = {"a": np.zeros(2), "b": np.ones(2)}
    state = AdamState()

    adam_step(state, params, {"a": np.ones(2)})

    assert params["b"].tolist() == [1.0, 1.0]
    assert set(state.m) == {"a"}
    assert state.t == 1


def test_step_counter_is_shared():
    """Test that a key first seen late is corrected with the global step count."""
    params = {"a": np.zeros(1), "b": np.zeros(1)}
    state = AdamState()
    adam_step(state, params, {"a": np.ones(1)})

    adam_step(state, params, {"b": np.ones(1)})

    # m = 0.1, v = 0.001 after one update; corrections use t = 2
    m_hat = 0.1 / (1 - 0.9**2)
    v_hat = 0.001 / (1 - 0.999**2)
    expected = -0.001 * m_hat / (np.sqrt(v_hat) + 1e-8)
    assert params["b"][0] == pytest.approx(expected)
    assert state.t == 2


def test_minimises_quadratic():
    """Test that repeated steps reach the minimum of a convex bowl."""
    params = {"w": np.array([3.0, -2.0])}
    state = AdamState(lr=0.05)

    for _ in range(2000):
        adam_step(state, params, {"w": 2.0 * (params["w"] - 1.0)})

    assert params["w"].tolist() == pytest.approx([1.0, 1.0], abs=1e-2)


def test_shape_mismatch():
    """Test that a gradient of the wrong shape is rejected before any update."""
    params = {"w": np.zeros(2)}
    state = AdamState()

    with pytest.raises(ShapeMismatchError):
        adam_step(state, params, {"w": np.zeros(3)})
    assert state.t == 0


def test_unknown_key():
    """Test that a gradient without a parameter is rejected."""
    with pytest.raises(ShapeMismatchError):
        adam_step(AdamState(), {"w": np.zeros(1)}, {"x": np.zeros(1)})
