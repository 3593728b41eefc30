"""Conditional posteriors of the Gibbs sampler.

Every column conditional is Gaussian with precision Lambda + alpha sum_c Y_c Y_c^T and
mean (precision)^-1 (Lambda mu + alpha sum_c r_c Y_c), summing over the observed cells c
of the column's slice of the tensor.
"""

from typing import Dict, Tuple

import numpy as np

from fbptf.model.config import HyperPriorConfig
from fbptf.model.state import FACTORS, GibbsWorkspace, HyperState, LatentState
from fbptf.model.tensor import DeltaTensor
from fbptf.numerics.gaussian_wishart import gw_posterior
from fbptf.numerics.linalg import cholesky, cp_reconstruct, solve_with_cholesky, symmetrize
from fbptf.numerics.random import RngStream, sample_mvn, sample_wishart


Gaussian = Tuple[np.ndarray, np.ndarray]


def alpha_posterior(state: LatentState, data: DeltaTensor, cfg: HyperPriorConfig) -> Tuple[float, float]:
    """Scale and degrees of freedom of the one-dimensional Wishart conditional of alpha.

    Residuals are taken against the coupled factor U_hat.
    """

    mask = data.get_mask()
    residual = data.get_values() - cp_reconstruct(state.get_U_hat(), state.get_V(), state.get_T())

    squared_error = float(np.sum(mask * residual * residual))

    scale = 1.0 / (1.0 / cfg.alpha_scale + squared_error)
    dof = cfg.alpha_dof + float(mask.sum())

    return scale, dof


def sample_alpha(state: LatentState, data: DeltaTensor, cfg: HyperPriorConfig, rng: RngStream) -> float:

    scale, dof = alpha_posterior(state, data, cfg)

    return float(sample_wishart(np.array([[scale]]), dof, rng)[0, 0])


def sample_thetas(state: LatentState, cfg: HyperPriorConfig, rng: RngStream) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """Draws (mu, Lambda) for U, V and T from their Gaussian-Wishart conditionals.

    Returns:
        Dict[str, Tuple[np.ndarray, np.ndarray]]: (mu, Lambda) per factor name.
    """

    prior = cfg.get_prior(state.get_U().shape[0])

    return {
        name: gw_posterior(prior, state.get_factor(name)).sample(rng.derive("theta-" + name))
        for name in FACTORS
    }


def gaussian_conditional(
    prior_mean: np.ndarray,
    prior_precision: np.ndarray,
    alpha: float,
    design: np.ndarray,
    targets: np.ndarray,
    mask: np.ndarray,
) -> Gaussian:
    """Mean and precision of a Gaussian linear-model conditional.

    Args:
        prior_mean (np.ndarray): mu, length D.
        prior_precision (np.ndarray): Lambda, D x D.
        alpha (float): Observation precision.
        design (np.ndarray): Design rows, shape (..., D).
        targets (np.ndarray): Observed values, shape (...).
        mask (np.ndarray): Observation indicator, shape (...).
    """

    dimension = prior_mean.size

    design = design.reshape(-1, dimension)
    targets = targets.reshape(-1)
    mask = mask.reshape(-1)

    weighted = design * mask[:, np.newaxis]

    precision = symmetrize(prior_precision + alpha * (weighted.T @ design))
    shift = prior_precision @ prior_mean + alpha * (weighted.T @ targets)

    L = cholesky(precision, jitter=True)

    return solve_with_cholesky(L, shift), precision


def conditional_u(i: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace) -> Gaussian:
    """Conditional of U_i given V, T; requires ws.prepare_u_block."""

    return gaussian_conditional(
        hyper.get_mu("U"), hyper.get_lambda("U"), hyper.get_alpha(),
        ws.y_jk, data.get_values()[i], data.get_mask()[i],
    )


def conditional_v(j: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace) -> Gaussian:
    """Conditional of V_j given U_hat, T; requires ws.prepare_v_block."""

    return gaussian_conditional(
        hyper.get_mu("V"), hyper.get_lambda("V"), hyper.get_alpha(),
        ws.y_ik, data.get_values()[:, j, :], data.get_mask()[:, j, :],
    )


def conditional_t(k: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace) -> Gaussian:
    """Conditional of T_k given U_hat, V; requires ws.prepare_t_block."""

    return gaussian_conditional(
        hyper.get_mu("T"), hyper.get_lambda("T"), hyper.get_alpha(),
        ws.y_ij, data.get_values()[:, :, k], data.get_mask()[:, :, k],
    )


def sample_u_column(i: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace, rng: RngStream) -> np.ndarray:

    return sample_mvn(*conditional_u(i, state, hyper, data, ws), rng)


def sample_v_column(j: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace, rng: RngStream) -> np.ndarray:

    return sample_mvn(*conditional_v(j, state, hyper, data, ws), rng)


def sample_t_column(k: int, state: LatentState, hyper: HyperState, data: DeltaTensor, ws: GibbsWorkspace, rng: RngStream) -> np.ndarray:

    return sample_mvn(*conditional_t(k, state, hyper, data, ws), rng)
