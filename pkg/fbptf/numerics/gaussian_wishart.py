"""Gaussian-Wishart conjugate prior and its posterior update."""

from typing import Optional, Tuple

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.numerics.linalg import cholesky, spd_inverse, symmetrize
from fbptf.numerics.random import RngStream, sample_mvn, sample_wishart


class GaussianWishartPrior:
    """Joint prior over a normal mean and precision: N(mu | mu0, (beta0 Lambda)^-1) W(Lambda | W0, nu0).

    Args:
        mu0 (np.ndarray): Prior mean, length D.
        beta0 (float): Prior mean strength, positive.
        W0 (np.ndarray): D x D symmetric positive-definite scale matrix.
        nu0 (float): Degrees of freedom, at least D.
    """

    def __init__(self, mu0: np.ndarray, beta0: float, W0: np.ndarray, nu0: float):

        mu0 = np.asarray(mu0, dtype=np.float64).ravel()
        W0 = np.asarray(W0, dtype=np.float64)
        dimension = mu0.size

        if W0.shape != (dimension, dimension):
            raise RejectedInputError(f"W0 must be {dimension}x{dimension}, given {W0.shape}")

        if not beta0 > 0:
            raise RejectedInputError(f"beta0 must be positive, given {beta0}")

        if nu0 < dimension:
            raise RejectedInputError(f"nu0 ({nu0}) must be at least D ({dimension})")

        # rejects non-PD scale matrices
        cholesky(W0)

        self._mu0 = mu0
        self._beta0 = float(beta0)
        self._W0 = W0
        self._nu0 = float(nu0)

        self._mu0.flags.writeable = False
        self._W0.flags.writeable = False

    @classmethod
    def default(cls, dimension: int) -> "GaussianWishartPrior":
        """mu0 = 0, beta0 = 1, W0 = I_D, nu0 = D."""

        return cls(np.zeros(dimension), 1.0, np.eye(dimension), float(dimension))

    def get_dimension(self) -> int:

        return self._mu0.size

    def get_mu0(self) -> np.ndarray:

        return self._mu0

    def get_beta0(self) -> float:

        return self._beta0

    def get_W0(self) -> np.ndarray:

        return self._W0

    def get_nu0(self) -> float:

        return self._nu0


class GaussianWishartPosterior:
    """Posterior parameters (mu*, beta*, W*, nu*) of a Gaussian-Wishart update."""

    def __init__(self, mu_star: np.ndarray, beta_star: float, W_star: np.ndarray, nu_star: float):

        self._mu_star = mu_star
        self._beta_star = beta_star
        self._W_star = W_star
        self._nu_star = nu_star

    def get_mu_star(self) -> np.ndarray:

        return self._mu_star

    def get_beta_star(self) -> float:

        return self._beta_star

    def get_W_star(self) -> np.ndarray:

        return self._W_star

    def get_nu_star(self) -> float:

        return self._nu_star

    def sample(self, rng: RngStream) -> Tuple[np.ndarray, np.ndarray]:
        """Draws Lambda ~ W(W*, nu*) and then mu ~ N(mu*, (beta* Lambda)^-1).

        Returns:
            Tuple[np.ndarray, np.ndarray]: (mu, Lambda)
        """

        precision = sample_wishart(self._W_star, self._nu_star, rng.derive("precision"))
        mean = sample_mvn(self._mu_star, self._beta_star * precision, rng.derive("mean"))

        return mean, precision


def gw_posterior(prior: GaussianWishartPrior, columns: Optional[np.ndarray]) -> GaussianWishartPosterior:
    """Conjugate update of a Gaussian-Wishart prior by the columns of a D x n matrix.

    The scatter matrix uses the biased 1/n normalization; n = 0 returns the prior.
    """

    dimension = prior.get_dimension()

    if columns is None:
        columns = np.zeros((dimension, 0))

    columns = np.asarray(columns, dtype=np.float64)

    if columns.ndim != 2 or columns.shape[0] != dimension:
        raise RejectedInputError(f"Expected a {dimension} x n matrix of columns, given shape {columns.shape}")

    count = columns.shape[1]

    if count == 0:
        return GaussianWishartPosterior(prior.get_mu0().copy(), prior.get_beta0(), prior.get_W0().copy(), prior.get_nu0())

    mu0 = prior.get_mu0()
    beta0 = prior.get_beta0()

    mean = columns.mean(axis=1)
    centered = columns - mean[:, np.newaxis]
    scatter = centered @ centered.T / count

    offset = (mu0 - mean)[:, np.newaxis]

    W_star_inv = (
        spd_inverse(prior.get_W0())
        + count * scatter
        + (beta0 * count / (beta0 + count)) * (offset @ offset.T)
    )

    return GaussianWishartPosterior(
        (beta0 * mu0 + count * mean) / (beta0 + count),
        beta0 + count,
        spd_inverse(symmetrize(W_star_inv)),
        prior.get_nu0() + count,
    )
