import numpy as np
import pytest

from fbptf.baselines import BaselineSpec, FoldInTensor, bpmf_train_predict, dbptf_train_predict, train_fold_in
from fbptf.errors import RejectedInputError
from fbptf_test.functional.data_generation import generate_parameter_dataset


def _fold_in():

    dataset = generate_parameter_dataset(N=12, M=2)

    return dataset, dataset.get_fold_in_tensor(range(9), range(9, 12))


def test_fold_in_layout():

    dataset, data = _fold_in()

    assert data.get_values().shape == (12, 3, 3)
    assert data.get_train_count() == 9
    assert data.get_version_count() == 2
    assert np.array_equal(data.get_test_rows(), [9, 10, 11])
    assert np.array_equal(data.get_values()[10, 0], dataset.get_A()[:, 10])
    assert np.array_equal(data.get_values()[2, 2], dataset.get_A_prime()[:, 2, 1])
    assert np.all(data.get_values()[9:, 1:] == 0.0)
    assert np.all(data.get_mask()[9:, 1:] == 0.0)


def test_fold_in_rejects_observed_test_versions():

    values = np.ones((3, 2, 1))
    mask = np.ones((3, 2, 1))

    with pytest.raises(RejectedInputError):
        FoldInTensor(values, mask, train_count=2)


def test_training_mean_centres_observed_cells():

    data = FoldInTensor.from_split(np.full((1, 2), 0.5), np.full((1, 2, 1), 1.5), np.full((1, 1), 7.0))

    assert data.training_mean() == pytest.approx(1.0)
    assert data.centered(1.0).get_values()[2, 0, 0] == pytest.approx(6.0)


@pytest.mark.parametrize("kind, run", [
    ("bpmf", bpmf_train_predict),
    ("dbptf", dbptf_train_predict),
])
def test_predictions_are_deterministic(kind, run):

    _, data = _fold_in()
    spec = BaselineSpec(kind, latent_dim=2, sweeps=4, burn_in=1)

    first = run(data, spec, seed=3)
    second = run(data, spec, seed=3)

    assert first.shape == (3, 2, 3)
    assert np.all(np.isfinite(first))
    assert np.array_equal(first, second)


def test_kind_must_match_entry_point():

    _, data = _fold_in()

    with pytest.raises(RejectedInputError):
        bpmf_train_predict(data, BaselineSpec("dbptf", sweeps=2, burn_in=0))

    with pytest.raises(RejectedInputError):
        train_fold_in(data, BaselineSpec("mlr"))


def test_bpmf_freezes_parameter_factor():

    spec = BaselineSpec("bpmf", latent_dim=2, sweeps=3, burn_in=1)

    assert spec.get_train_config().freeze_t
    assert not spec.get_train_config().feature_coupling
    assert not BaselineSpec("dbptf").get_train_config().freeze_t


def test_fold_in_tracks_validation_targets():

    dataset, data = _fold_in()
    targets = np.transpose(dataset.get_A_prime()[:, 9:, :], (1, 2, 0)).copy()
    targets[0, 0, 0] = np.nan

    fit = train_fold_in(data, BaselineSpec("dbptf", latent_dim=2, sweeps=3, burn_in=1), validation_targets=targets)

    assert all(entry[2] is not None for entry in fit.get_model().get_rmse_trace())
    assert fit.truncated(1).predict().shape == (3, 2, 3)
    assert fit.get_offset() == pytest.approx(data.training_mean())
