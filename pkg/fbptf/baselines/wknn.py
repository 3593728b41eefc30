
import numpy as np
from sklearn.neighbors import NearestNeighbors

from fbptf.baselines.spec import BaselineSpec
from fbptf.errors import RejectedInputError


class WeightedNeighbours:
    """Inverse-distance weighted k-nearest-neighbour regression.

    Args:
        train_inputs (np.ndarray): p x N training inputs.
        train_targets (np.ndarray): N x M x K training targets.
        spec (BaselineSpec): Neighbour count and distance epsilon.
    """

    def __init__(self, train_inputs: np.ndarray, train_targets: np.ndarray, spec: BaselineSpec):

        train_inputs = np.asarray(train_inputs, dtype=np.float64)
        train_targets = np.asarray(train_targets, dtype=np.float64)

        if train_inputs.ndim != 2 or train_inputs.shape[1] == 0:
            raise RejectedInputError("The training set is empty")

        if train_targets.shape[0] != train_inputs.shape[1]:
            raise RejectedInputError(
                f"Inputs have {train_inputs.shape[1]} samples, targets {train_targets.shape[0]}"
            )

        if spec.k > train_inputs.shape[1]:
            raise RejectedInputError(f"k = {spec.k} exceeds the {train_inputs.shape[1]} training samples")

        self._spec = spec
        self._targets = train_targets
        self._index = NearestNeighbors(n_neighbors=spec.k, metric="euclidean").fit(train_inputs.T)

    def predict(self, queries: np.ndarray) -> np.ndarray:
        """Predictions for p x n queries, shape n x M x K."""

        queries = np.asarray(queries, dtype=np.float64)

        distances, indices = self._index.kneighbors(queries.T)
        weights = 1.0 / (distances + self._spec.distance_epsilon)
        weights /= weights.sum(axis=1, keepdims=True)

        return np.einsum("nk,nk...->n...", weights, self._targets[indices])


def wknn_predict(query: np.ndarray, train_inputs: np.ndarray, train_targets: np.ndarray, spec: BaselineSpec) -> np.ndarray:
    """Weighted mean of the targets of the k nearest training inputs, shape M x K."""

    query = np.asarray(query, dtype=np.float64).ravel()

    return WeightedNeighbours(train_inputs, train_targets, spec).predict(query[:, np.newaxis])[0]
