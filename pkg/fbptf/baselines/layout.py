"""Column layouts shared by the regression baselines.

Inputs stack [A; F] into a (K+L) x N matrix; targets stack the M x K version
parameters of every image row-major into an (M K) x N matrix.
"""

import numpy as np

from fbptf.errors import RejectedInputError


def regression_inputs(A: np.ndarray, F: np.ndarray) -> np.ndarray:

    A = np.asarray(A, dtype=np.float64)
    F = np.asarray(F, dtype=np.float64)

    if A.ndim != 2 or F.ndim != 2 or A.shape[1] != F.shape[1]:
        raise RejectedInputError(f"Parameters and features disagree on N: {A.shape} and {F.shape}")

    return np.vstack([A, F])


def stack_versions(A_prime: np.ndarray) -> np.ndarray:
    """K x N x M version parameters as an (M K) x N target matrix."""

    A_prime = np.asarray(A_prime, dtype=np.float64)
    K, N, M = A_prime.shape

    return np.transpose(A_prime, (2, 0, 1)).reshape(M * K, N)


def unstack_versions(Y: np.ndarray, M: int, K: int) -> np.ndarray:
    """(M K) x n targets as n x M x K."""

    Y = np.asarray(Y, dtype=np.float64)

    if Y.shape[0] != M * K:
        raise RejectedInputError(f"Expected {M * K} target rows, given {Y.shape[0]}")

    return Y.T.reshape(-1, M, K)
