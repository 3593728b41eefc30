import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.model import ModelDims, Snapshot, TrainedModel, TrainConfig


def _model(trace, burn_in=1, sweeps=5):

    snapshots = [
        Snapshot(np.eye(1), np.zeros((1, 1)), np.ones((1, 1)), np.ones((1, 1)), sweep=sweep)
        for sweep in range(burn_in + 1, sweeps + 1)
    ]

    return TrainedModel(ModelDims(1, 1, 1, 1), snapshots, trace, sweeps=sweeps, burn_in=burn_in)


def test_best_prefix_ignores_burn_in():

    model = _model([(1, 0.9, 0.1), (2, 0.8, 0.5), (3, 0.7, 0.3), (4, 0.6, 0.4), (5, 0.5, 0.35)])

    assert model.best_prefix() == (3, 2, 0.3)


def test_best_prefix_without_validation():

    assert _model([(sweep, 0.5, None) for sweep in range(1, 6)]).best_prefix() is None


def test_truncation_keeps_chain_order():

    model = _model([])

    truncated = model.truncated(2)

    assert [snapshot.get_sweep() for snapshot in truncated.get_snapshots()] == [2, 3]
    assert truncated.get_burn_in() == 1

    with pytest.raises(RejectedInputError):
        model.truncated(0)


def test_inconsistent_snapshots_are_rejected():

    with pytest.raises(RejectedInputError):
        TrainedModel(ModelDims(1, 2, 1, 1), [Snapshot(np.eye(1), np.zeros((1, 1)), np.ones((1, 1)), np.ones((1, 1)))])


def test_default_burn_in_is_a_fifth_of_the_sweeps():

    assert TrainConfig(sweeps=50).get_burn_in() == 10

    with pytest.raises(RejectedInputError):
        TrainConfig(sweeps=5, burn_in=5)
