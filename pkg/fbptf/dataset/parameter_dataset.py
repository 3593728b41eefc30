
from typing import Dict, List, Optional, Sequence

import numpy as np

from fbptf.baselines.fold_in import FoldInTensor
from fbptf.dataset.identifier import default_identifiers, is_valid_identifier
from fbptf.errors import RejectedInputError
from fbptf.model.tensor import DeltaTensor


class ParameterDataset:
    """Parameters, version parameters and features of N images.

    Args:
        A (np.ndarray): K x N low-quality parameters.
        A_prime (np.ndarray): K x N x M version parameters.
        F (np.ndarray): L x N features.
        ids (Optional[Sequence[str]]): Unique identifier per image; zero-padded indices when omitted.
        provenance (Optional[Dict]): Free-form key/value echo of how the data was made.
    """

    def __init__(self, A: np.ndarray, A_prime: np.ndarray, F: np.ndarray, ids: Optional[Sequence[str]] = None, provenance: Optional[Dict] = None):

        A = np.array(A, dtype=np.float64)
        A_prime = np.array(A_prime, dtype=np.float64)
        F = np.array(F, dtype=np.float64)

        if A.ndim != 2 or A_prime.ndim != 3 or F.ndim != 2:
            raise RejectedInputError(
                f"Expected K x N, K x N x M and L x N arrays, given {A.shape}, {A_prime.shape} and {F.shape}"
            )

        K, N = A.shape

        if A_prime.shape[:2] != (K, N):
            raise RejectedInputError(f"Version parameters must be {K} x {N} x M, given {A_prime.shape}")

        if F.shape[1] != N:
            raise RejectedInputError(f"Features describe {F.shape[1]} images, parameters {N}")

        for name, array in (("A", A), ("A_prime", A_prime), ("F", F)):
            if not np.all(np.isfinite(array)):
                raise RejectedInputError(f"{name} contains non-finite values")

        ids = default_identifiers(N) if ids is None else [str(identifier) for identifier in ids]

        if len(ids) != N:
            raise RejectedInputError(f"Expected {N} identifiers, given {len(ids)}")

        if len(set(ids)) != N:
            raise RejectedInputError("Identifiers must be unique")

        for identifier in ids:
            if not is_valid_identifier(identifier):
                raise RejectedInputError(f"Invalid identifier: '{identifier}'")

        for array in (A, A_prime, F):
            array.flags.writeable = False

        self._A = A
        self._A_prime = A_prime
        self._F = F
        self._ids = ids
        self._provenance = dict(provenance or {})

    @classmethod
    def from_synthetic(cls, dataset) -> "ParameterDataset":

        config = dataset.get_config()

        provenance = {"source": "synthetic"}
        provenance.update({
            f"synthetic.{name}": value
            for name, value in (
                ("n", config.n), ("k", config.k), ("l", config.l), ("m", config.m), ("eta", config.eta),
                ("r1_low", config.r1_range[0]), ("r1_high", config.r1_range[1]),
                ("r2_low", config.r2_range[0]), ("r2_high", config.r2_range[1]),
                ("r3_low", config.r3_range[0]), ("r3_high", config.r3_range[1]),
                ("norm_scale", config.get_norm_scale()), ("seed", config.seed),
            )
        })

        return cls(dataset.get_A(), dataset.get_A_prime(), dataset.get_F(), provenance=provenance)

    def get_A(self) -> np.ndarray:

        return self._A

    def get_A_prime(self) -> np.ndarray:

        return self._A_prime

    def get_F(self) -> np.ndarray:

        return self._F

    def get_ids(self) -> List[str]:

        return list(self._ids)

    def get_provenance(self) -> Dict:

        return dict(self._provenance)

    def get_N(self) -> int:

        return self._A.shape[1]

    def get_K(self) -> int:

        return self._A.shape[0]

    def get_M(self) -> int:

        return self._A_prime.shape[2]

    def get_L(self) -> int:

        return self._F.shape[0]

    def subset(self, indices: Sequence[int]) -> "ParameterDataset":

        indices = np.asarray(indices, dtype=int)

        return ParameterDataset(
            self._A[:, indices],
            self._A_prime[:, indices, :],
            self._F[:, indices],
            [self._ids[index] for index in indices],
            self._provenance,
        )

    def get_delta_values(self) -> np.ndarray:
        """N x M x K changes A'_{k,i,j} - A_{k,i}."""

        return np.transpose(self._A_prime - self._A[:, :, np.newaxis], (1, 2, 0))

    def get_delta_tensor(self) -> DeltaTensor:

        return DeltaTensor(self.get_delta_values())

    def get_fold_in_tensor(self, train_indices: Sequence[int], test_indices: Sequence[int]) -> FoldInTensor:

        train = self.subset(train_indices)

        return FoldInTensor.from_split(train.get_A(), train.get_A_prime(), self._A[:, np.asarray(test_indices, dtype=int)])
