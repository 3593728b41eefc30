"""Iteratively reweighted solver for min ||X||_{2,1} s.t. ZX = B.

Each iteration sets X <- D Z^T (Z D Z^T)^-1 B with D = diag(2 max(||x_i||, eps)),
i.e. the inverse of the usual reweighting matrix. The first iterate (D = I) is the
minimum-Frobenius-norm feasible point Z^+ B.
"""

import logging

import numpy as np

from fbptf.errors import DecompositionError, SolverBreakdownError
from fbptf.l21.config import L21Config
from fbptf.l21.problem import L21Problem, L21Solution
from fbptf.numerics.linalg import cholesky, l21_norm, solve_with_cholesky, symmetrize


logger = logging.getLogger(__name__)


def solve(problem: L21Problem, config: L21Config) -> L21Solution:
    """Solves the given instance.

    Args:
        problem (L21Problem): Instance to solve.
        config (L21Config): Reweighting epsilon, iteration budget and tolerance.

    Raises:
        SolverBreakdownError: The inner system could not be factorized, even after jitter.
    """

    Z = problem.get_Z()
    B = problem.get_B()

    step = _structured_step if problem.has_diagonal_lead() else _dense_step

    X = step(problem, np.ones(Z.shape[1]), 0)
    trace = [l21_norm(X)]
    residuals = [_residual(Z, X, B)]

    for iteration in range(1, config.max_iter + 1):

        weights = 2.0 * np.maximum(np.sqrt(np.sum(X * X, axis=1)), config.epsilon)

        X = step(problem, weights, iteration)
        trace.append(l21_norm(X))
        residuals.append(_residual(Z, X, B))

        previous, current = trace[-2], trace[-1]

        if previous <= 0.0 or abs(previous - current) < config.tol * previous:
            break

    logger.debug(
        "l21 solve finished after {} iterations: objective {:.6g}, residual {:.3g}".format(
            len(trace) - 1, trace[-1], residuals[-1]
        )
    )

    return L21Solution(X, trace, residuals, problem.get_blocks())


def _residual(Z: np.ndarray, X: np.ndarray, B: np.ndarray) -> float:

    return float(np.linalg.norm(Z @ X - B))


def _dense_step(problem: L21Problem, weights: np.ndarray, iteration: int) -> np.ndarray:

    Z = problem.get_Z()

    normal_matrix = symmetrize((Z * weights[np.newaxis, :]) @ Z.T)

    try:
        L = cholesky(normal_matrix, jitter=True)

    except DecompositionError as error:
        raise SolverBreakdownError(f"Inner solve failed: {error}", iteration)

    return weights[:, np.newaxis] * (Z.T @ solve_with_cholesky(L, problem.get_B()))


def _structured_step(problem: L21Problem, weights: np.ndarray, iteration: int) -> np.ndarray:
    """Same update as _dense_step for Z = [diag(a) | G], through the Woodbury identity.

    With s = 1 / (a^2 w_lead) the trailing rows solve
    (diag(1 / w_rest) + G^T diag(s) G) X_rest = G^T diag(s) B, and the leading rows follow
    from the constraint as (B - G X_rest) / a, which keeps ZX = B to working precision.
    """

    Z = problem.get_Z()
    B = problem.get_B()
    count = problem.get_blocks()[0]

    lead = np.diag(Z[:, :count])
    G = Z[:, count:]

    scaling = 1.0 / (lead * lead * weights[:count])
    inner = np.diag(1.0 / weights[count:]) + (G.T * scaling[np.newaxis, :]) @ G

    try:
        L = cholesky(symmetrize(inner), jitter=True)

    except DecompositionError as error:
        raise SolverBreakdownError(f"Inner solve failed: {error}", iteration)

    trailing = solve_with_cholesky(L, G.T @ (scaling[:, np.newaxis] * B))
    leading = (B - G @ trailing) / lead[:, np.newaxis]

    return np.vstack([leading, trailing])
