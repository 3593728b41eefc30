"""Featureless factorization baselines on the fold-in tensor.

Test rows carry only their low-quality slot, so their latent factors are inferred
from those cells alone; the version slots are read off the Monte-Carlo mean of
the reconstruction. Values are centered by the mean of the observed training cells.
"""

import logging
from typing import Optional

import numpy as np

from fbptf.baselines.fold_in import FoldInTensor
from fbptf.baselines.spec import BaselineSpec
from fbptf.errors import RejectedInputError
from fbptf.model.config import HyperPriorConfig
from fbptf.model.dims import ModelDims
from fbptf.model.gibbs import Validation, train
from fbptf.model.prediction import predict_cells
from fbptf.model.tensor import DeltaTensor
from fbptf.model.trained_model import TrainedModel


logger = logging.getLogger(__name__)


class FoldInFit:
    """A chain trained on a fold-in tensor, with the offset and layout to read predictions back."""

    def __init__(self, model: TrainedModel, offset: float, data: FoldInTensor):

        self._model = model
        self._offset = offset
        self._data = data

    def get_model(self) -> TrainedModel:

        return self._model

    def get_offset(self) -> float:

        return self._offset

    def truncated(self, snapshot_count: int) -> "FoldInFit":

        return FoldInFit(self._model.truncated(snapshot_count), self._offset, self._data)

    def predict(self) -> np.ndarray:
        """n_test x M x K predicted version parameters."""

        cells = predict_cells(self._model).reshape(self._data.get_values().shape)

        return cells[self._data.get_test_rows(), 1:, :] + self._offset


def _unfold(values: np.ndarray, unfold: bool) -> np.ndarray:

    return values.reshape(values.shape[0], -1, 1) if unfold else values


def train_fold_in(
    data: FoldInTensor,
    spec: BaselineSpec,
    seed: Optional[int] = None,
    hyper_cfg: HyperPriorConfig = HyperPriorConfig(),
    validation_targets: Optional[np.ndarray] = None,
) -> FoldInFit:
    """Trains bpmf (on the N x ((M+1) K) x 1 unfolding) or dbptf (on the tensor itself).

    Args:
        validation_targets (Optional[np.ndarray]): n_test x M x K true version parameters,
            tracked as held-out cells of the test rows in the RMSE trace; NaN cells are not tracked.
    """

    if not spec.is_matrix_factorization():
        raise RejectedInputError(f"'{spec.kind}' is not a factorization baseline")

    unfold = spec.kind == "bpmf"
    offset = data.training_mean()
    centered = data.centered(offset)

    tensor = DeltaTensor(
        _unfold(centered.get_values(), unfold),
        _unfold(centered.get_mask(), unfold),
        allow_empty=True,
    )

    validation = None
    if validation_targets is not None:

        values = np.zeros(data.get_values().shape)
        mask = np.zeros(data.get_values().shape)

        targets = np.asarray(validation_targets, dtype=np.float64)
        tracked = np.isfinite(targets)

        values[data.get_test_rows(), 1:, :] = np.where(tracked, targets - offset, 0.0)
        mask[data.get_test_rows(), 1:, :] = tracked

        validation = Validation(DeltaTensor(_unfold(values, unfold), _unfold(mask, unfold), allow_empty=True))

    train_cfg = spec.get_train_config() if seed is None else spec.get_train_config(seed=seed)
    dims = ModelDims.bind(tensor.get_values(), None, spec.latent_dim)

    logger.debug("{}: training on {} with {} observed cells".format(spec.kind, dims, tensor.get_observed_count()))

    model = train(tensor, None, dims, hyper_cfg, train_cfg, validation, allow_empty=True)

    return FoldInFit(model, offset, data)


def bpmf_train_predict(
    data: FoldInTensor,
    spec: BaselineSpec,
    seed: Optional[int] = None,
    hyper_cfg: HyperPriorConfig = HyperPriorConfig(),
) -> np.ndarray:
    """Two-factor BPMF: T frozen to ones, K collapsed into the version axis.

    Returns:
        np.ndarray: n_test x M x K predicted version parameters.
    """

    if spec.kind != "bpmf":
        raise RejectedInputError(f"Expected a bpmf spec, given '{spec.kind}'")

    return train_fold_in(data, spec, seed, hyper_cfg).predict()


def dbptf_train_predict(
    data: FoldInTensor,
    spec: BaselineSpec,
    seed: Optional[int] = None,
    hyper_cfg: HyperPriorConfig = HyperPriorConfig(),
) -> np.ndarray:
    """Three-factor tensor factorization without feature coupling.

    Returns:
        np.ndarray: n_test x M x K predicted version parameters.
    """

    if spec.kind != "dbptf":
        raise RejectedInputError(f"Expected a dbptf spec, given '{spec.kind}'")

    return train_fold_in(data, spec, seed, hyper_cfg).predict()
