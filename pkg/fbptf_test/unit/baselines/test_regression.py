import numpy as np
import pytest

from fbptf.baselines import BaselineSpec, mlr_fit, transfer_predict, wknn_predict
from fbptf.baselines.layout import regression_inputs, stack_versions, unstack_versions
from fbptf.baselines.wknn import WeightedNeighbours
from fbptf.errors import RejectedInputError


def test_mlr_interpolates_linear_targets():

    generator = np.random.default_rng(0)
    X = generator.standard_normal((4, 30))
    C = generator.standard_normal((4, 6))
    b = generator.standard_normal(6)
    Y = C.T @ X + b[:, np.newaxis]

    fit = mlr_fit(X, Y)

    assert np.linalg.norm(fit.predict(X) - Y) <= 1e-8
    assert np.allclose(fit.get_coefficients(), C)
    assert np.allclose(fit.get_intercept(), b)


def test_mlr_with_constant_input_predicts_mean():

    Y = np.array([[1.0, 2.0, 6.0], [0.0, 0.0, 3.0]])

    fit = mlr_fit(np.ones((1, 3)), Y)

    assert np.allclose(fit.predict(np.ones((1, 2))), np.array([[3.0, 3.0], [1.0, 1.0]]))


def test_mlr_matches_normal_equations():

    generator = np.random.default_rng(1)
    X = generator.standard_normal((3, 10))
    Y = generator.standard_normal((2, 10))

    fit = mlr_fit(X, Y)

    design = np.hstack([X.T, np.ones((10, 1))])
    expected = np.linalg.solve(design.T @ design, design.T @ Y.T)

    assert np.allclose(fit.get_coefficients(), expected[:-1], atol=1e-8)
    assert np.allclose(fit.get_intercept(), expected[-1], atol=1e-8)


def test_mlr_without_intercept_is_linear():

    generator = np.random.default_rng(2)
    X = generator.standard_normal((3, 12))
    Y = generator.standard_normal((3, 3)).T @ X

    fit = mlr_fit(X, Y)
    x = generator.standard_normal((3, 1))

    assert np.allclose(fit.predict(2.5 * x), 2.5 * fit.predict(x), atol=1e-10)


def test_wknn_returns_exact_match_for_k_one():

    inputs = np.array([[0.0, 1.0, 5.0]])
    targets = np.arange(3 * 2 * 3, dtype=float).reshape(3, 2, 3)

    prediction = wknn_predict(np.array([1.0]), inputs, targets, BaselineSpec("wknn", k=1))

    assert np.allclose(prediction, targets[1])


def test_wknn_averages_equidistant_neighbours():

    inputs = np.array([[-1.0, 1.0, 10.0]])
    targets = np.array([0.0, 2.0, 100.0]).reshape(3, 1, 1)

    prediction = wknn_predict(np.array([0.0]), inputs, targets, BaselineSpec("wknn", k=2))

    assert prediction[0, 0] == pytest.approx(1.0)


def test_wknn_hand_evaluated_weights():

    inputs = np.array([[0.0, 1.0, 3.0, 6.0, 10.0, 15.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0]])
    targets = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).reshape(6, 1, 1)
    epsilon = 1e-8

    prediction = wknn_predict(np.array([2.0, 0.0]), inputs, targets, BaselineSpec("wknn", k=3, distance_epsilon=epsilon))

    weights = np.array([1.0 / (2.0 + epsilon), 1.0 / (1.0 + epsilon), 1.0 / (1.0 + epsilon)])
    expected = np.dot(weights, [1.0, 2.0, 3.0]) / weights.sum()

    assert prediction[0, 0] == pytest.approx(expected, abs=1e-12)


def test_wknn_is_translation_invariant():

    generator = np.random.default_rng(3)
    inputs = generator.uniform(0.0, 20.0, size=(2, 15))
    targets = generator.standard_normal((15, 2, 3))
    query = np.array([7.0, 4.0])
    shift = np.array([32.0, -16.0])
    spec = BaselineSpec("wknn", k=4)

    shifted = wknn_predict(query + shift, inputs + shift[:, np.newaxis], targets, spec)

    assert np.allclose(shifted, wknn_predict(query, inputs, targets, spec), atol=1e-9)


def test_wknn_rejects_small_training_sets():

    with pytest.raises(RejectedInputError):
        WeightedNeighbours(np.zeros((2, 0)), np.zeros((0, 1, 1)), BaselineSpec("wknn", k=1))

    with pytest.raises(RejectedInputError):
        WeightedNeighbours(np.zeros((2, 3)), np.zeros((3, 1, 1)), BaselineSpec("wknn", k=4))


def test_transfer_applies_nearest_change():

    train_A = np.array([[0.2, 0.8], [0.5, 0.5], [0.1, 0.3]])
    train_F = np.array([[0.0, 10.0]])
    train_A_prime = np.stack([train_A + 0.1, train_A - 0.2], axis=2)

    prediction = transfer_predict(np.array([0.3, 0.4, 0.2]), np.array([9.0]), train_A, train_F, train_A_prime)

    assert np.allclose(prediction, [[0.4, 0.5, 0.3], [0.1, 0.2, 0.0]])


def test_version_stacking_layout():

    A_prime = np.arange(3 * 4 * 2, dtype=float).reshape(3, 4, 2)

    stacked = stack_versions(A_prime)

    assert stacked.shape == (6, 4)
    assert stacked[1 * 3 + 2, 3] == A_prime[2, 3, 1]
    assert np.array_equal(unstack_versions(stacked, 2, 3), np.transpose(A_prime, (1, 2, 0)))
    assert regression_inputs(np.ones((3, 4)), np.zeros((5, 4))).shape == (8, 4)
