"""Monte-Carlo prediction from retained snapshots and the clipping envelope."""

import numpy as np

from fbptf.errors import RejectedInputError, RejectedStateError
from fbptf.model.config import ClipConfig
from fbptf.model.trained_model import TrainedModel
from fbptf.numerics.linalg import cp_reconstruct


def predict_deltas(model: TrainedModel, F: np.ndarray) -> np.ndarray:
    """Snapshot average of <F_i^T P + Q, V_j, T_k> for a D x n feature matrix, shape n x M x K."""

    snapshots = model.get_snapshots()

    if not snapshots:
        raise RejectedStateError("Model has no retained snapshots")

    F = np.asarray(F, dtype=np.float64)

    if F.ndim != 2 or F.shape[0] != model.get_dims().D:
        raise RejectedInputError(
            f"Features must have {model.get_dims().D} rows, given shape {F.shape}"
        )

    total = np.zeros((F.shape[1], model.get_dims().M, model.get_dims().K))

    for snapshot in snapshots:
        total += cp_reconstruct(snapshot.image_factor(F), snapshot.get_V(), snapshot.get_T())

    return total / len(snapshots)


def predict(model: TrainedModel, F_t: np.ndarray, A_t: np.ndarray) -> np.ndarray:
    """Raw predicted parameters R = A_t + mean delta for one image, shape M x K."""

    F_t = np.asarray(F_t, dtype=np.float64).ravel()
    A_t = np.asarray(A_t, dtype=np.float64).ravel()

    if A_t.size != model.get_dims().K:
        raise RejectedInputError(f"Expected {model.get_dims().K} input parameters, given {A_t.size}")

    return A_t[np.newaxis, :] + predict_deltas(model, F_t[:, np.newaxis])[0]


def predict_batch(model: TrainedModel, F: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Raw predicted parameters for n images: A is K x n, F is D x n; returns n x M x K."""

    A = np.asarray(A, dtype=np.float64)

    if A.shape != (model.get_dims().K, np.shape(F)[1]):
        raise RejectedInputError(f"Expected K x n input parameters, given shape {A.shape}")

    return A.T[:, np.newaxis, :] + predict_deltas(model, F)


def predict_cells(model: TrainedModel) -> np.ndarray:
    """Snapshot average of the reconstruction of the training tensor itself (N x M x K)."""

    snapshots = model.get_snapshots()

    if not snapshots or snapshots[0].get_U_hat() is None:
        raise RejectedStateError("Model carries no image factors of its training rows")

    total = np.zeros((model.get_dims().N, model.get_dims().M, model.get_dims().K))

    for snapshot in snapshots:
        total += cp_reconstruct(snapshot.get_U_hat(), snapshot.get_V(), snapshot.get_T())

    return total / len(snapshots)


def clip(pred: np.ndarray, A_t: np.ndarray, cfg: ClipConfig) -> np.ndarray:
    """Bounds each parameter k to [A_k - zeta_k A_k, A_k + lambda_k A_k].

    The upper bound is applied first, then the lower bound.
    """

    pred = np.asarray(pred, dtype=np.float64)
    A_t = np.asarray(A_t, dtype=np.float64).ravel()

    if pred.shape[-1] != A_t.size or cfg.get_upward().size != A_t.size:
        raise RejectedInputError(
            f"Inconsistent parameter counts: predictions {pred.shape[-1]}, inputs {A_t.size}, multipliers {cfg.get_upward().size}"
        )

    clipped = np.minimum(pred, A_t + cfg.get_upward() * A_t)

    return np.maximum(clipped, A_t - cfg.get_downward() * A_t)
