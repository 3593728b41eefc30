import numpy as np
import pytest

from fbptf.errors import RejectedInputError, RejectedStateError
from fbptf.model import ClipConfig, ModelDims, Snapshot, TrainedModel, clip, predict, predict_batch, predict_cells
from fbptf_test.functional.data_generation import generate_trained_model


def _scalar_model(*deltas):

    # D = 1, F = 1, P = 1, Q = 0, T = 1: every cell of the snapshot equals V
    return TrainedModel(ModelDims(1, 1, 1, 1), [
        Snapshot(np.ones((1, 1)), np.zeros((1, 1)), np.array([[delta]]), np.ones((1, 1)), sweep=index + 1)
        for index, delta in enumerate(deltas)
    ])


def test_zero_coupling_predicts_inputs():

    model = TrainedModel(ModelDims(1, 2, 3, 2), [
        Snapshot(np.zeros((2, 2)), np.zeros((1, 2)), np.ones((2, 2)), np.ones((2, 3)), sweep=1),
    ])

    prediction = predict(model, np.array([1.0, 2.0]), np.array([0.1, 0.2, 0.3]))

    assert np.array_equal(prediction, np.tile([0.1, 0.2, 0.3], (2, 1)))


def test_single_snapshot_expansion():

    model = TrainedModel(ModelDims(1, 1, 1, 1), [
        Snapshot(np.array([[1.0]]), np.array([[0.5]]), np.array([[3.0]]), np.array([[4.0]]), sweep=1),
    ])

    assert predict(model, np.array([2.0]), np.array([0.0]))[0, 0] == pytest.approx(30.0)


def test_snapshots_are_averaged():

    assert predict(_scalar_model(0.2, 0.4), np.array([1.0]), np.array([0.0]))[0, 0] == pytest.approx(0.3)


def test_batch_prediction_matches_single_predictions():

    model = generate_trained_model(D=2, M=2, K=3)
    generator = np.random.default_rng(5)
    F = generator.standard_normal((2, 4))
    A = generator.uniform(size=(3, 4))

    batch = predict_batch(model, F, A)

    assert batch.shape == (4, 2, 3)
    for index in range(4):
        assert np.allclose(batch[index], predict(model, F[:, index], A[:, index]))


def test_in_sample_cells():

    model = generate_trained_model(D=2, N=3, M=2, K=3, snapshots=1)
    snapshot = model.get_snapshots()[0]

    expected = np.einsum("di,dj,dk->ijk", snapshot.get_U_hat(), snapshot.get_V(), snapshot.get_T())

    assert np.allclose(predict_cells(model), expected)


def test_prediction_rejects_wrong_sizes():

    model = generate_trained_model(D=2, K=3)

    with pytest.raises(RejectedInputError):
        predict(model, np.ones(3), np.ones(3))

    with pytest.raises(RejectedInputError):
        predict(model, np.ones(2), np.ones(2))


def test_model_requires_snapshots():

    with pytest.raises(RejectedStateError):
        TrainedModel(ModelDims(1, 1, 1, 1), [])


@pytest.mark.parametrize("prediction, expected", [
    (0.9, 0.7),
    (0.2, 0.35),
    (0.6, 0.6),
])
def test_clip_examples(prediction, expected):

    clipped = clip(np.full((1, 3), prediction), np.full(3, 0.5), ClipConfig(upward=(0.4,) * 3, downward=(0.3,) * 3))

    assert clipped == pytest.approx(np.full((1, 3), expected))


def test_default_clip_envelope():

    A = np.array([0.5, 0.5, 0.2])
    prediction = np.array([[1.0, 0.0, 0.3], [0.55, 0.45, 0.2]])

    clipped = clip(prediction, A, ClipConfig())

    assert clipped[0] == pytest.approx([0.7, 0.35, 0.21])
    assert clipped[1] == pytest.approx([0.55, 0.45, 0.2])


def test_clip_is_idempotent():

    generator = np.random.default_rng(6)
    A = generator.uniform(size=3)
    prediction = generator.uniform(size=(5, 3))

    once = clip(prediction, A, ClipConfig())

    assert np.array_equal(clip(once, A, ClipConfig()), once)


def test_collapsed_clip_returns_inputs():

    A = np.array([0.3, 0.6, 0.1])

    assert np.array_equal(clip(np.ones((2, 3)), A, ClipConfig.collapsed(3)), np.tile(A, (2, 1)))


def test_clip_rejects_inconsistent_sizes():

    with pytest.raises(RejectedInputError):
        clip(np.ones((2, 2)), np.ones(3), ClipConfig())

    with pytest.raises(RejectedInputError):
        ClipConfig(upward=(-0.1, 0.0, 0.0))
