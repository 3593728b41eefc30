"""Gibbs sampler of the feature-coupled tensor factorization.

One sweep draws, in order: alpha; (mu, Lambda) of U, V and T; every U_i; the l21 fit
of (P, Q) against U with U_hat = (F^T P + 1 Q)^T; every V_j from U_hat; every T_k
from U_hat and the new V. Random draws use the sub-stream
(seed, "sweep", y, <block>, <index>), so results do not depend on the worker count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Tuple

import numpy as np

from fbptf.errors import NumericalError, RejectedInputError, SweepError
from fbptf.l21.problem import assemble_problem, extract_pq
from fbptf.l21.solver import solve
from fbptf.model.conditionals import sample_alpha, sample_t_column, sample_thetas, sample_u_column, sample_v_column
from fbptf.model.config import HyperPriorConfig, TrainConfig
from fbptf.model.dims import ModelDims
from fbptf.model.state import GibbsWorkspace, HyperState, LatentState, reconstruct
from fbptf.model.tensor import DeltaTensor
from fbptf.model.trained_model import Snapshot, TrainedModel
from fbptf.numerics.linalg import cp_reconstruct
from fbptf.numerics.metrics import rmse
from fbptf.numerics.random import RngStream


logger = logging.getLogger(__name__)


class Validation:
    """Held-out cells tracked during training.

    Args:
        data (DeltaTensor): Held-out values and mask.
        F (Optional[np.ndarray]): D x n features of unseen images. When omitted, the
            held-out cells belong to the training images (same N x M x K shape).
    """

    def __init__(self, data: DeltaTensor, F: Optional[np.ndarray] = None):

        self._data = data
        self._F = None if F is None else np.asarray(F, dtype=np.float64)

    def get_data(self) -> DeltaTensor:

        return self._data

    def get_F(self) -> Optional[np.ndarray]:

        return self._F


def init_state(
    dims: ModelDims,
    F: Optional[np.ndarray],
    cfg: HyperPriorConfig,
    rng: RngStream,
    *,
    initial_p: Optional[np.ndarray] = None,
    freeze_t: bool = False,
) -> Tuple[LatentState, HyperState]:
    """Initial sample: V, T, P ~ N(0, sigma^2), Q = 0 and U = U_hat = (F^T P + 1 Q)^T.

    Without features, U itself is drawn from N(0, sigma^2).
    """

    D = dims.D
    sigma = np.sqrt(cfg.sigma2_init)

    if F is not None and np.shape(F) != (D, dims.N):
        raise RejectedInputError(f"Features must be {D} x {dims.N}, given shape {np.shape(F)}")

    if initial_p is not None and np.shape(initial_p) != (D, D):
        raise RejectedInputError(f"Initial P must be {D} x {D}, given shape {np.shape(initial_p)}")

    V = sigma * rng.derive("V").generator().standard_normal((D, dims.M))
    if freeze_t:
        T = np.ones((D, dims.K))
    else:
        T = sigma * rng.derive("T").generator().standard_normal((D, dims.K))

    if F is None:
        U = sigma * rng.derive("U").generator().standard_normal((D, dims.N))
        state = LatentState(U, V, T)

    else:
        P = sigma * rng.derive("P").generator().standard_normal((D, D)) if initial_p is None else np.array(initial_p, dtype=np.float64)
        Q = np.zeros((1, D))
        U_hat = reconstruct(np.asarray(F, dtype=np.float64), P, Q)
        state = LatentState(U_hat.copy(), V, T, P=P, Q=Q, U_hat=U_hat)

    return state, HyperState.initial(D, cfg.alpha_init)


def _draw_columns(count: int, draw: Callable[[int], np.ndarray], workers: int) -> np.ndarray:

    if workers > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            columns = list(executor.map(draw, range(count)))
    else:
        columns = [draw(index) for index in range(count)]

    return np.column_stack(columns)


def gibbs_sweep(
    state: LatentState,
    hyper: HyperState,
    data: DeltaTensor,
    F: Optional[np.ndarray],
    train_cfg: TrainConfig,
    sweep_index: int,
    rng: RngStream,
    *,
    hyper_cfg: HyperPriorConfig = HyperPriorConfig(),
    workspace: Optional[GibbsWorkspace] = None,
) -> Tuple[LatentState, HyperState]:
    """Runs one full sweep and returns the new (state, hyper).

    Raises:
        SweepError: A decomposition or solver failure, tagged with the sweep index.
    """

    try:
        return _sweep(state, hyper, data, F, train_cfg, sweep_index, rng, hyper_cfg, workspace)

    except SweepError:
        raise

    except NumericalError as error:
        raise SweepError(error, sweep_index)


def _sweep(state, hyper, data, F, train_cfg, sweep_index, rng, hyper_cfg, workspace):

    dims = state.get_dims()
    ws = workspace or GibbsWorkspace(dims)
    stream = rng.derive("sweep", sweep_index)
    workers = train_cfg.workers

    alpha = sample_alpha(state, data, hyper_cfg, stream.derive("alpha"))
    hyper = hyper.with_alpha(alpha)

    thetas = sample_thetas(state, hyper_cfg, stream.derive("thetas"))
    hyper = hyper.with_thetas(thetas)

    ws.prepare_u_block(state)
    U = _draw_columns(dims.N, lambda i: sample_u_column(i, state, hyper, data, ws, stream.derive("U", i)), workers)

    if train_cfg.feature_coupling:
        solution = solve(assemble_problem(F, U, train_cfg.l21), train_cfg.l21)
        P, Q = extract_pq(solution, train_cfg.l21)
        U_hat = reconstruct(F, P, Q)
        logger.debug("sweep {}: l21 fit objective {:.6g} after {} iterations".format(
            sweep_index, solution.get_objective(), solution.get_iteration_count()
        ))
        state = state.replace(U=U, P=P, Q=Q, U_hat=U_hat)
    else:
        state = state.replace(U=U, U_hat=U.copy())

    ws.prepare_v_block(state)
    V = _draw_columns(dims.M, lambda j: sample_v_column(j, state, hyper, data, ws, stream.derive("V", j)), workers)
    state = state.replace(V=V)

    if not train_cfg.freeze_t:
        ws.prepare_t_block(state)
        T = _draw_columns(dims.K, lambda k: sample_t_column(k, state, hyper, data, ws, stream.derive("T", k)), workers)
        state = state.replace(T=T)

    return state, hyper


class _RunningPrediction:
    """Running Monte-Carlo mean of the reconstructed cells."""

    def __init__(self):

        self._total = None
        self._count = 0

    def add(self, cells: np.ndarray) -> None:

        self._total = cells.copy() if self._total is None else self._total + cells
        self._count += 1

    def current(self, fallback: np.ndarray) -> np.ndarray:

        return fallback if self._count == 0 else self._total / self._count


def train(
    data: DeltaTensor,
    F: Optional[np.ndarray],
    dims: ModelDims,
    hyper_cfg: HyperPriorConfig,
    train_cfg: TrainConfig,
    validation: Optional[Validation] = None,
    *,
    allow_empty: bool = False,
) -> TrainedModel:
    """Runs the Gibbs chain and retains post-burn-in snapshots.

    Args:
        data (DeltaTensor): N x M x K training tensor.
        F (Optional[np.ndarray]): D x N features; required with feature coupling.
        dims (ModelDims): Model dimensions; D must equal the feature length.
        hyper_cfg (HyperPriorConfig): Prior constants.
        train_cfg (TrainConfig): Chain settings.
        validation (Optional[Validation]): Held-out cells tracked in the RMSE trace.
        allow_empty (bool): Accept a tensor without observed cells (pure prior draws).
    """

    if data.get_shape() != (dims.N, dims.M, dims.K):
        raise RejectedInputError(f"Tensor shape {data.get_shape()} does not match {dims}")

    if data.get_observed_count() == 0 and not allow_empty:
        raise RejectedInputError("Training tensor has no observed cells")

    if train_cfg.feature_coupling:
        if F is None:
            raise RejectedInputError("Feature coupling requires a feature matrix")
        F = np.asarray(F, dtype=np.float64)
        if F.shape != (dims.D, dims.N):
            raise RejectedInputError(f"Features must be {dims.D} x {dims.N}, given shape {F.shape}")

    if validation is not None and validation.get_F() is not None and not train_cfg.feature_coupling:
        raise RejectedInputError("Validation on unseen images requires feature coupling")

    rng = RngStream(train_cfg.seed)
    burn_in = train_cfg.get_burn_in()

    state, hyper = init_state(
        dims, F if train_cfg.feature_coupling else None, hyper_cfg, rng.derive("init"),
        freeze_t=train_cfg.freeze_t,
    )
    workspace = GibbsWorkspace(dims)

    snapshots = []
    trace = []
    train_prediction = _RunningPrediction()
    validation_prediction = _RunningPrediction()

    for sweep in range(1, train_cfg.sweeps + 1):

        state, hyper = gibbs_sweep(
            state, hyper, data, F, train_cfg, sweep, rng,
            hyper_cfg=hyper_cfg, workspace=workspace,
        )

        cells = cp_reconstruct(state.get_U_hat(), state.get_V(), state.get_T())
        validation_cells = _validation_cells(state, validation, cells)

        retained = sweep > burn_in and (sweep - burn_in) % train_cfg.thin == 0

        if retained:
            snapshots.append(Snapshot(state.get_P(), state.get_Q(), state.get_V(), state.get_T(), state.get_U_hat(), sweep=sweep))
            train_prediction.add(cells)
            if validation_cells is not None:
                validation_prediction.add(validation_cells)

        if sweep % train_cfg.track_rmse_every == 0 or sweep == train_cfg.sweeps:

            train_rmse = rmse(train_prediction.current(cells), data.get_values(), data.get_mask()) \
                if data.get_observed_count() else float("nan")

            validation_rmse = None
            if validation_cells is not None and validation.get_data().get_observed_count():
                validation_rmse = rmse(
                    validation_prediction.current(validation_cells),
                    validation.get_data().get_values(),
                    validation.get_data().get_mask(),
                )

            trace.append((sweep, train_rmse, validation_rmse))

            logger.info("sweep {}/{}: train RMSE {:.6f}, validation RMSE {}".format(
                sweep, train_cfg.sweeps, train_rmse,
                "-" if validation_rmse is None else "{:.6f}".format(validation_rmse),
            ))

    return TrainedModel(
        dims,
        snapshots,
        trace,
        sweeps=train_cfg.sweeps,
        burn_in=burn_in,
        seed=train_cfg.seed,
        feature_coupling=train_cfg.feature_coupling,
    )


def _validation_cells(state: LatentState, validation: Optional[Validation], cells: np.ndarray) -> Optional[np.ndarray]:

    if validation is None:
        return None

    if validation.get_F() is None:

        if validation.get_data().get_shape() != cells.shape:
            raise RejectedInputError("In-sample validation must have the shape of the training tensor")

        return cells

    U_validation = reconstruct(validation.get_F(), state.get_P(), state.get_Q())

    return cp_reconstruct(U_validation, state.get_V(), state.get_T())
