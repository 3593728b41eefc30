
from typing import Tuple

import numpy as np

from fbptf.dataset import ParameterDataset
from fbptf.model import ModelDims, Snapshot, TrainedModel
from fbptf.numerics.linalg import cp_reconstruct


def generate_planted_tensor(N: int = 50, M: int = 4, K: int = 3, D: int = 5, noise: float = 0.01, seed: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Tensor <F^T P + Q, V, T> plus Gaussian noise, returned with its D x N features."""

    generator = np.random.default_rng(seed)

    F = generator.standard_normal((D, N))
    P = generator.standard_normal((D, D)) / np.sqrt(D)
    Q = 0.1 * generator.standard_normal((1, D))
    V = generator.standard_normal((D, M))
    T = generator.standard_normal((D, K))

    values = cp_reconstruct((F.T @ P + Q).T, V, T) + noise * generator.standard_normal((N, M, K))

    return values, F


def generate_parameter_dataset(N: int = 12, M: int = 2, L: int = 4, seed: int = 0) -> ParameterDataset:

    generator = np.random.default_rng(seed)

    A = generator.uniform(0.2, 0.8, size=(3, N))
    A_prime = np.clip(A[:, :, np.newaxis] + 0.1 * generator.standard_normal((3, N, M)), 0.0, 1.0)
    F = generator.standard_normal((L, N))

    return ParameterDataset(A, A_prime, F)


def generate_trained_model(D: int = 2, N: int = 3, M: int = 2, K: int = 3, snapshots: int = 2, seed: int = 0) -> TrainedModel:

    generator = np.random.default_rng(seed)

    return TrainedModel(
        ModelDims(N, M, K, D),
        [
            Snapshot(
                generator.standard_normal((D, D)),
                generator.standard_normal((1, D)),
                generator.standard_normal((D, M)),
                generator.standard_normal((D, K)),
                generator.standard_normal((D, N)),
                sweep=index + 1,
            )
            for index in range(snapshots)
        ],
        [(index + 1, 0.5, 0.6) for index in range(snapshots)],
        sweeps=snapshots,
        burn_in=0,
        seed=seed,
    )
