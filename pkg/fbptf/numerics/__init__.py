
from .linalg import as_matrix, cp_inner, cp_reconstruct, l21_norm, cholesky, solve_with_cholesky, spd_inverse, symmetrize
from .random import RngStream, sample_mvn, sample_wishart
from .gaussian_wishart import GaussianWishartPrior, GaussianWishartPosterior, gw_posterior
from .metrics import rmse
from .csv_io import read_matrix, write_matrix, format_matrix
