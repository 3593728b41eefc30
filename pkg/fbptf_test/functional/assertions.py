
import numpy as np

from fbptf.dataset import ParameterDataset
from fbptf.model import TrainedModel


def assert_equal_datasets(dataset_a: ParameterDataset, dataset_b: ParameterDataset):

    assert np.array_equal(dataset_a.get_A(), dataset_b.get_A())
    assert np.array_equal(dataset_a.get_A_prime(), dataset_b.get_A_prime())
    assert np.array_equal(dataset_a.get_F(), dataset_b.get_F())
    assert dataset_a.get_ids() == dataset_b.get_ids()
    assert dataset_a.get_provenance() == dataset_b.get_provenance()


def assert_equal_models(model_a: TrainedModel, model_b: TrainedModel):

    assert model_a.get_dims() == model_b.get_dims()
    assert model_a.get_sweeps() == model_b.get_sweeps()
    assert model_a.get_burn_in() == model_b.get_burn_in()
    assert model_a.get_seed() == model_b.get_seed()
    assert model_a.has_feature_coupling() == model_b.has_feature_coupling()
    assert list(model_a.get_rmse_trace()) == list(model_b.get_rmse_trace())

    assert model_a.get_snapshot_count() == model_b.get_snapshot_count()
    for first_snapshot, second_snapshot in zip(model_a.get_snapshots(), model_b.get_snapshots()):

        assert first_snapshot.get_sweep() == second_snapshot.get_sweep()
        assert np.array_equal(first_snapshot.get_P(), second_snapshot.get_P())
        assert np.array_equal(first_snapshot.get_Q(), second_snapshot.get_Q())
        assert np.array_equal(first_snapshot.get_V(), second_snapshot.get_V())
        assert np.array_equal(first_snapshot.get_T(), second_snapshot.get_T())

        if first_snapshot.get_U_hat() is None:
            assert second_snapshot.get_U_hat() is None
        else:
            assert np.array_equal(first_snapshot.get_U_hat(), second_snapshot.get_U_hat())
