"""Error metrics."""

import numpy as np

from fbptf.errors import RejectedInputError


def rmse(pred: np.ndarray, truth: np.ndarray, mask: np.ndarray = None) -> float:
    """Root mean squared error pooled over all cells with mask == 1."""

    pred = np.asarray(pred, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    mask = np.ones(pred.shape) if mask is None else np.asarray(mask, dtype=np.float64)

    if pred.shape != truth.shape or pred.shape != mask.shape:
        raise RejectedInputError(
            f"rmse requires identical shapes, given {pred.shape}, {truth.shape}, {mask.shape}"
        )

    observed = mask.sum()

    if observed <= 0:
        raise RejectedInputError("rmse requires at least one observed cell")

    residual = np.where(mask > 0, pred - truth, 0.0)

    return float(np.sqrt(np.sum(mask * residual * residual) / observed))
