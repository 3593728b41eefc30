
import numpy as np

from fbptf.errors import RejectedInputError


class LinearFit:
    """Multivariate least-squares fit Y ~ C^T X + b.

    Args:
        coefficients (np.ndarray): p x q matrix C.
        intercept (np.ndarray): Length-q vector b.
    """

    def __init__(self, coefficients: np.ndarray, intercept: np.ndarray):

        self._coefficients = coefficients
        self._intercept = intercept

    def get_coefficients(self) -> np.ndarray:

        return self._coefficients

    def get_intercept(self) -> np.ndarray:

        return self._intercept

    def predict(self, X: np.ndarray) -> np.ndarray:
        """q x n predictions for a p x n input matrix."""

        X = np.asarray(X, dtype=np.float64)

        if X.ndim == 1:
            X = X[:, np.newaxis]

        if X.shape[0] != self._coefficients.shape[0]:
            raise RejectedInputError(f"Expected {self._coefficients.shape[0]} input rows, given {X.shape[0]}")

        return self._coefficients.T @ X + self._intercept[:, np.newaxis]


def mlr_fit(X: np.ndarray, Y: np.ndarray) -> LinearFit:
    """Ordinary least squares with intercept through the pseudo-inverse.

    Args:
        X (np.ndarray): p x N inputs.
        Y (np.ndarray): q x N targets.
    """

    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)

    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[1]:
        raise RejectedInputError(f"Inputs and targets disagree on N: {X.shape} and {Y.shape}")

    if X.shape[1] < 1:
        raise RejectedInputError("At least one sample is required")

    design = np.hstack([X.T, np.ones((X.shape[1], 1))])
    weights = np.linalg.pinv(design) @ Y.T

    return LinearFit(weights[:-1], weights[-1])
