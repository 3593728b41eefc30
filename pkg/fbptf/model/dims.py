
from typing import Optional

import numpy as np

from fbptf.errors import RejectedInputError


class ModelDims:
    """Sizes of the factorization: N images, M versions, K parameters, D latent dimensions.

    With feature coupling D equals the feature length L; see `bind`.
    """

    def __init__(self, N: int, M: int, K: int, D: int):

        for name, value in (("N", N), ("M", M), ("K", K), ("D", D)):
            if int(value) < 1:
                raise RejectedInputError(f"Dimension {name} must be positive, given {value}")

        self.N = int(N)
        self.M = int(M)
        self.K = int(K)
        self.D = int(D)

    @classmethod
    def bind(cls, values: np.ndarray, F: Optional[np.ndarray], latent_dim: Optional[int] = None) -> "ModelDims":
        """Derives the dimensions from an N x M x K tensor and a D x N feature matrix."""

        if values.ndim != 3:
            raise RejectedInputError(f"Expected an N x M x K tensor, given shape {values.shape}")

        N, M, K = values.shape

        if F is None:
            if latent_dim is None:
                raise RejectedInputError("A latent dimension is required when no features are given")
            return cls(N, M, K, latent_dim)

        if F.ndim != 2 or F.shape[1] != N:
            raise RejectedInputError(f"Features must be D x {N}, given shape {F.shape}")

        if latent_dim is not None and latent_dim != F.shape[0]:
            raise RejectedInputError(
                f"Latent dimension ({latent_dim}) must equal the feature length ({F.shape[0]})"
            )

        return cls(N, M, K, F.shape[0])

    def as_tuple(self):

        return self.N, self.M, self.K, self.D

    def __eq__(self, other) -> bool:

        return isinstance(other, ModelDims) and self.as_tuple() == other.as_tuple()

    def __repr__(self) -> str:

        return "ModelDims(N={}, M={}, K={}, D={})".format(*self.as_tuple())
