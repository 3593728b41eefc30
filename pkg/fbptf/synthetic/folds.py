
from typing import List, Tuple

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.numerics.random import RngStream


Split = Tuple[np.ndarray, np.ndarray]


def split_folds(count: int, folds: int = 3, seed: int = 0) -> List[Split]:
    """Seeded k-fold partition of range(count).

    The first `count % folds` test folds receive one extra index.

    Returns:
        List[Split]: (sorted train indices, sorted test indices) per fold.
    """

    if folds < 2:
        raise RejectedInputError(f"At least two folds are required, given {folds}")

    if folds > count:
        raise RejectedInputError(f"Cannot split {count} samples into {folds} folds")

    permutation = RngStream(seed).derive("folds").generator().permutation(count)

    result = []
    for test in np.array_split(permutation, folds):
        test = np.sort(test)
        train = np.setdiff1d(np.arange(count), test)
        result.append((train, test))

    return result
