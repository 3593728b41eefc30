
import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.model.tensor import DeltaTensor


class FoldInTensor:
    """Raw N x (M+1) x K parameters for featureless baselines.

    Slot 0 of every row holds the low-quality parameters A, slots 1..M the version
    parameters A'. Training rows come first and are fully observed; the trailing
    test rows observe slot 0 only.

    Args:
        values (np.ndarray): N x (M+1) x K raw parameters; unobserved cells are ignored.
        mask (np.ndarray): N x (M+1) x K observation indicator.
        train_count (int): Number of leading training rows.
    """

    def __init__(self, values: np.ndarray, mask: np.ndarray, train_count: int):

        values = np.array(values, dtype=np.float64)
        mask = np.array(mask, dtype=np.float64)

        if values.ndim != 3 or values.shape[1] < 2 or mask.shape != values.shape:
            raise RejectedInputError(
                f"Expected N x (M+1) x K values and mask with M >= 1, given {values.shape} and {mask.shape}"
            )

        if not 0 <= train_count <= values.shape[0]:
            raise RejectedInputError(f"Training row count {train_count} exceeds {values.shape[0]} rows")

        if not np.all(mask[:train_count] == 1.0):
            raise RejectedInputError("Training rows must be fully observed")

        if not (np.all(mask[train_count:, 0, :] == 1.0) and np.all(mask[train_count:, 1:, :] == 0.0)):
            raise RejectedInputError("Test rows must observe exactly their low-quality slot")

        values[mask == 0.0] = 0.0

        self._values = values
        self._mask = mask
        self._train_count = int(train_count)

        self._values.flags.writeable = False
        self._mask.flags.writeable = False

    @classmethod
    def from_split(cls, train_A: np.ndarray, train_A_prime: np.ndarray, test_A: np.ndarray) -> "FoldInTensor":
        """Stacks training rows (A and A') over test rows (A only).

        Args:
            train_A (np.ndarray): K x n_train low-quality parameters.
            train_A_prime (np.ndarray): K x n_train x M version parameters.
            test_A (np.ndarray): K x n_test low-quality parameters.
        """

        train_A = np.asarray(train_A, dtype=np.float64)
        train_A_prime = np.asarray(train_A_prime, dtype=np.float64)
        test_A = np.asarray(test_A, dtype=np.float64)

        K, n_train = train_A.shape
        if train_A_prime.ndim != 3 or train_A_prime.shape[:2] != (K, n_train):
            raise RejectedInputError(f"Version parameters must be {K} x {n_train} x M, given {train_A_prime.shape}")

        if test_A.ndim != 2 or test_A.shape[0] != K:
            raise RejectedInputError(f"Test parameters must have {K} rows, given shape {test_A.shape}")

        M = train_A_prime.shape[2]
        N = n_train + test_A.shape[1]

        values = np.zeros((N, M + 1, K))
        values[:n_train, 0, :] = train_A.T
        values[:n_train, 1:, :] = np.transpose(train_A_prime, (1, 2, 0))
        values[n_train:, 0, :] = test_A.T

        mask = np.zeros((N, M + 1, K))
        mask[:n_train] = 1.0
        mask[n_train:, 0, :] = 1.0

        return cls(values, mask, n_train)

    def get_values(self) -> np.ndarray:

        return self._values

    def get_mask(self) -> np.ndarray:

        return self._mask

    def get_train_count(self) -> int:

        return self._train_count

    def get_test_rows(self) -> np.ndarray:

        return np.arange(self._train_count, self._values.shape[0])

    def get_version_count(self) -> int:

        return self._values.shape[1] - 1

    def training_mean(self) -> float:
        """Mean of the observed cells of the training rows; 0 without training rows."""

        if self._train_count == 0:
            return 0.0

        return float(self._values[:self._train_count].mean())

    def centered(self, offset: float) -> DeltaTensor:

        return DeltaTensor(self._values - offset, self._mask, allow_empty=True)
