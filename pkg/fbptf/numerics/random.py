"""Deterministic random streams and samplers.

A stream is an immutable (seed, path) descriptor. Every distinct path maps onto
its own numpy SeedSequence, so sub-streams can be handed to workers in any order
without changing the drawn values.
"""

import zlib
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from fbptf.errors import RejectedInputError
from fbptf.numerics.linalg import cholesky


StreamPath = Tuple[Tuple[str, int], ...]

SEED_MASK = (1 << 64) - 1


class RngStream:
    """Immutable descriptor of a reproducible random sub-stream.

    Args:
        seed (int): 64-bit unsigned root seed.
        path (StreamPath): (label, index) pairs identifying the derived sub-stream.
    """

    def __init__(self, seed: int, path: StreamPath = ()):

        if not 0 <= int(seed) <= SEED_MASK:
            raise RejectedInputError(f"Seed must be a 64-bit unsigned integer, given {seed}")

        self._seed = int(seed)
        self._path = tuple((str(label), int(index)) for label, index in path)

    def get_seed(self) -> int:

        return self._seed

    def get_path(self) -> StreamPath:

        return self._path

    def derive(self, label: str, index: int = 0) -> "RngStream":
        """Returns the sub-stream one level below this one."""

        return RngStream(self._seed, self._path + ((label, index),))

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""

        spawn_key = []
        for label, index in self._path:
            spawn_key.append(zlib.crc32(label.encode("utf-8")))
            spawn_key.append(index)

        return np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(self._seed, spawn_key=tuple(spawn_key))
        ))

    def __eq__(self, other) -> bool:

        return isinstance(other, RngStream) and (self._seed, self._path) == (other._seed, other._path)

    def __hash__(self) -> int:

        return hash((self._seed, self._path))

    def __repr__(self) -> str:

        return "RngStream(seed={}, path={})".format(self._seed, self._path)


def sample_mvn(mean: np.ndarray, precision: np.ndarray, rng: RngStream, count: Optional[int] = None) -> np.ndarray:
    """Draws from N(mean, precision^-1).

    Args:
        mean (np.ndarray): Mean vector of length D.
        precision (np.ndarray): D x D symmetric positive-definite precision matrix.
        rng (RngStream): Source stream; identical streams give identical draws.
        count (Optional[int]): Number of draws. When given, returns a (count, D) array.

    Returns:
        np.ndarray: A D-vector, or count x D draws.
    """

    mean = np.asarray(mean, dtype=np.float64).ravel()
    precision = np.asarray(precision, dtype=np.float64)

    if precision.shape != (mean.size, mean.size):
        raise RejectedInputError(
            f"Precision shape {precision.shape} does not match mean length {mean.size}"
        )

    L = cholesky(precision, jitter=True)

    z = rng.generator().standard_normal((mean.size, 1 if count is None else count))

    # x = mean + L^-T z has covariance (L L^T)^-1
    draws = solve_triangular(L.T, z, lower=False)

    if count is None:
        return mean + draws[:, 0]

    return mean[np.newaxis, :] + draws.T


def sample_wishart(scale: np.ndarray, dof: float, rng: RngStream) -> np.ndarray:
    """Draws from the Wishart distribution W(scale, dof) via the Bartlett decomposition.

    Args:
        scale (np.ndarray): D x D symmetric positive-definite scale matrix.
        dof (float): Degrees of freedom, at least D.
        rng (RngStream): Source stream.

    Returns:
        np.ndarray: Symmetric positive-definite D x D draw with mean dof * scale.
    """

    scale = np.atleast_2d(np.asarray(scale, dtype=np.float64))
    dimension = scale.shape[0]

    if scale.shape != (dimension, dimension):
        raise RejectedInputError(f"Wishart scale must be square, given shape {scale.shape}")

    if dof < dimension:
        raise RejectedInputError(f"Wishart degrees of freedom ({dof}) must be at least the dimension ({dimension})")

    L = cholesky(scale, jitter=True)

    generator = rng.generator()

    A = np.zeros((dimension, dimension))
    A[np.diag_indices(dimension)] = np.sqrt(generator.chisquare(dof - np.arange(dimension)))
    lower = np.tril_indices(dimension, k=-1)
    A[lower] = generator.standard_normal(len(lower[0]))

    LA = L @ A
    draw = LA @ LA.T

    return (draw + draw.T) / 2.0
