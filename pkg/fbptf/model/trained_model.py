
from typing import List, Optional, Tuple

import numpy as np

from fbptf.errors import RejectedInputError, RejectedStateError
from fbptf.model.dims import ModelDims


RmseTraceEntry = Tuple[int, float, Optional[float]]


class Snapshot:
    """One retained Gibbs sample: coupling (P, Q), factors V, T and the coupled image factor U_hat."""

    def __init__(self, P: np.ndarray, Q: np.ndarray, V: np.ndarray, T: np.ndarray, U_hat: Optional[np.ndarray] = None, *, sweep: int = 0):

        self._sweep = int(sweep)

        self._P = np.array(P, dtype=np.float64)
        self._Q = np.array(Q, dtype=np.float64).reshape(1, -1)
        self._V = np.array(V, dtype=np.float64)
        self._T = np.array(T, dtype=np.float64)
        self._U_hat = None if U_hat is None else np.array(U_hat, dtype=np.float64)

        for matrix in (self._P, self._Q, self._V, self._T, self._U_hat):
            if matrix is not None:
                matrix.flags.writeable = False

    def get_sweep(self) -> int:
        """Sweep the sample was retained at."""

        return self._sweep

    def get_P(self) -> np.ndarray:

        return self._P

    def get_Q(self) -> np.ndarray:

        return self._Q

    def get_V(self) -> np.ndarray:

        return self._V

    def get_T(self) -> np.ndarray:

        return self._T

    def get_U_hat(self) -> Optional[np.ndarray]:

        return self._U_hat

    def image_factor(self, F: np.ndarray) -> np.ndarray:
        """Coupled factor (F^T P + Q)^T for a D x n feature matrix."""

        return (F.T @ self._P + self._Q).T

    def is_consistent_with(self, dims: ModelDims) -> bool:

        D = dims.D

        return (
            self._P.shape == (D, D)
            and self._Q.shape == (1, D)
            and self._V.shape == (D, dims.M)
            and self._T.shape == (D, dims.K)
            and (self._U_hat is None or self._U_hat.shape == (D, dims.N))
        )


class TrainedModel:
    """Immutable result of a Gibbs run: retained snapshots and the RMSE trace.

    Args:
        dims (ModelDims): Dimensions of the training tensor.
        snapshots (List[Snapshot]): Post-burn-in samples in chain order.
        rmse_trace (List[RmseTraceEntry]): (sweep, train RMSE, validation RMSE or None).
        sweeps (int): Total sweeps run.
        burn_in (int): Discarded sweeps.
        seed (int): Root seed of the chain.
        feature_coupling (bool): Whether U was coupled to features.
    """

    def __init__(
        self,
        dims: ModelDims,
        snapshots: List[Snapshot],
        rmse_trace: Optional[List[RmseTraceEntry]] = None,
        *,
        sweeps: int = 0,
        burn_in: int = 0,
        seed: int = 0,
        feature_coupling: bool = True,
    ):
        if not snapshots:
            raise RejectedStateError("A trained model needs at least one retained snapshot")

        for index, snapshot in enumerate(snapshots):
            if not snapshot.is_consistent_with(dims):
                raise RejectedInputError(f"Snapshot {index} is inconsistent with {dims}")

        self._dims = dims
        self._snapshots = tuple(snapshots)
        self._rmse_trace = tuple(rmse_trace or ())
        self._sweeps = sweeps
        self._burn_in = burn_in
        self._seed = seed
        self._feature_coupling = feature_coupling

    def get_dims(self) -> ModelDims:

        return self._dims

    def get_snapshots(self) -> Tuple[Snapshot, ...]:

        return self._snapshots

    def get_snapshot_count(self) -> int:

        return len(self._snapshots)

    def get_rmse_trace(self) -> Tuple[RmseTraceEntry, ...]:

        return self._rmse_trace

    def get_sweeps(self) -> int:

        return self._sweeps

    def get_burn_in(self) -> int:

        return self._burn_in

    def get_seed(self) -> int:

        return self._seed

    def has_feature_coupling(self) -> bool:

        return self._feature_coupling

    def truncated(self, snapshot_count: int) -> "TrainedModel":
        """Model restricted to the first `snapshot_count` snapshots of the chain."""

        if not 1 <= snapshot_count <= len(self._snapshots):
            raise RejectedInputError(f"Snapshot prefix must be in [1, {len(self._snapshots)}], given {snapshot_count}")

        return TrainedModel(
            self._dims,
            list(self._snapshots[:snapshot_count]),
            list(self._rmse_trace),
            sweeps=self._sweeps,
            burn_in=self._burn_in,
            seed=self._seed,
            feature_coupling=self._feature_coupling,
        )

    def best_prefix(self) -> Optional[Tuple[int, int, float]]:
        """Post-burn-in sweep with the lowest validation RMSE.

        Returns:
            Optional[Tuple[int, int, float]]: (sweep, snapshot prefix length, validation RMSE),
                or None without a validation trace after burn-in.
        """

        candidates = [
            (validation, sweep)
            for sweep, _, validation in self._rmse_trace
            if validation is not None and sweep > self._burn_in
        ]

        if not candidates:
            return None

        validation, sweep = min(candidates)

        prefix = sum(1 for snapshot in self._snapshots if snapshot.get_sweep() <= sweep)

        return sweep, max(1, prefix), validation
