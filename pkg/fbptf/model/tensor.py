
import numpy as np

from fbptf.errors import RejectedInputError


class DeltaTensor:
    """Observed N x M x K tensor with its {0,1} observation mask.

    Masked-out cells are zeroed on construction; no likelihood term ever reads them.

    Args:
        values (np.ndarray): N x M x K values.
        mask (np.ndarray): N x M x K observation indicator; all ones when omitted.
        allow_empty (bool): Accept a mask without observed cells (prior-only runs).
    """

    def __init__(self, values: np.ndarray, mask: np.ndarray = None, *, allow_empty: bool = False):

        values = np.array(values, dtype=np.float64)
        mask = np.ones(values.shape) if mask is None else np.array(mask, dtype=np.float64)

        if values.ndim != 3 or mask.shape != values.shape:
            raise RejectedInputError(
                f"Expected N x M x K values and mask of equal shape, given {values.shape} and {mask.shape}"
            )

        if not np.all(np.isin(mask, (0.0, 1.0))):
            raise RejectedInputError("Mask entries must be 0 or 1")

        if not allow_empty and mask.sum() < 1:
            raise RejectedInputError("At least one cell must be observed")

        observed = mask > 0

        if not np.all(np.isfinite(values[observed])):
            raise RejectedInputError("Observed values must be finite")

        values[~observed] = 0.0

        self._values = values
        self._mask = mask

        self._values.flags.writeable = False
        self._mask.flags.writeable = False

    def get_values(self) -> np.ndarray:

        return self._values

    def get_mask(self) -> np.ndarray:

        return self._mask

    def get_shape(self):

        return self._values.shape

    def get_observed_count(self) -> int:

        return int(self._mask.sum())

    def select_rows(self, indices) -> "DeltaTensor":
        """Sub-tensor of the given image rows."""

        return DeltaTensor(self._values[indices], self._mask[indices], allow_empty=True)
