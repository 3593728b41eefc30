
import numpy as np
from sklearn.neighbors import NearestNeighbors

from fbptf.baselines.layout import regression_inputs
from fbptf.errors import RejectedInputError


def transfer_predict(query_A: np.ndarray, query_F: np.ndarray, train_A: np.ndarray, train_F: np.ndarray, train_A_prime: np.ndarray) -> np.ndarray:
    """Applies the parameter change of the nearest training image to the query.

    Args:
        query_A (np.ndarray): Length-K parameters of the query.
        query_F (np.ndarray): Length-L features of the query.
        train_A (np.ndarray): K x N training parameters.
        train_F (np.ndarray): L x N training features.
        train_A_prime (np.ndarray): K x N x M training version parameters.

    Returns:
        np.ndarray: M x K parameters query_A + (A'_n - A_n) of the nearest neighbour n in [A; F].
    """

    query_A = np.asarray(query_A, dtype=np.float64).ravel()
    query_F = np.asarray(query_F, dtype=np.float64).ravel()
    train_A_prime = np.asarray(train_A_prime, dtype=np.float64)

    inputs = regression_inputs(train_A, train_F)

    if inputs.shape[1] == 0:
        raise RejectedInputError("The training set is empty")

    if query_A.size + query_F.size != inputs.shape[0]:
        raise RejectedInputError(f"Query has {query_A.size + query_F.size} inputs, training set {inputs.shape[0]}")

    index = NearestNeighbors(n_neighbors=1).fit(inputs.T)
    _, neighbour = index.kneighbors(np.concatenate([query_A, query_F])[np.newaxis, :])
    n = int(neighbour[0, 0])

    change = train_A_prime[:, n, :] - np.asarray(train_A, dtype=np.float64)[:, n, np.newaxis]

    return query_A[np.newaxis, :] + change.T
