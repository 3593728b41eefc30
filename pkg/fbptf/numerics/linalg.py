"""Dense matrix kernels."""

import numpy as np
from scipy.linalg import lapack, solve_triangular

from fbptf.errors import DecompositionError, RejectedInputError


JITTER = 1e-10
SYMMETRY_TOLERANCE = 1e-10


def as_matrix(data, *, name: str = "matrix") -> np.ndarray:
    """Converts the given data into a finite, two-dimensional float64 array."""

    matrix = np.array(data, dtype=np.float64, copy=True)

    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)

    if matrix.ndim != 2:
        raise RejectedInputError(f"{name} must be two-dimensional, given shape {matrix.shape}")

    if not np.all(np.isfinite(matrix)):
        raise RejectedInputError(f"{name} contains non-finite entries")

    return matrix


def cp_inner(u: np.ndarray, v: np.ndarray, t: np.ndarray) -> float:
    """Trilinear inner product sum_d u_d * v_d * t_d."""

    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)

    if u.ndim != 1 or u.shape != v.shape or u.shape != t.shape or u.size == 0:
        raise RejectedInputError(
            f"cp_inner requires three vectors of identical length >= 1, given {u.shape}, {v.shape}, {t.shape}"
        )

    return float(np.sum(u * v * t))


def cp_reconstruct(U: np.ndarray, V: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Evaluates cp_inner for every (i, j, k) at once.

    Args:
        U (np.ndarray): D x N factor.
        V (np.ndarray): D x M factor.
        T (np.ndarray): D x K factor.

    Returns:
        np.ndarray: N x M x K tensor.
    """

    return np.einsum("di,dj,dk->ijk", U, V, T)


def l21_norm(X: np.ndarray) -> float:
    """Sum of the Euclidean norms of the rows of X."""

    X = np.asarray(X, dtype=np.float64)

    if X.size == 0:
        raise RejectedInputError("l21_norm requires a non-empty matrix")

    return float(np.sum(np.sqrt(np.sum(X * X, axis=1))))


def symmetrize(A: np.ndarray) -> np.ndarray:

    return (A + A.T) / 2.0


def cholesky(A: np.ndarray, *, jitter: bool = False) -> np.ndarray:
    """Lower-triangular Cholesky factor L with L @ L.T == A.

    Args:
        A (np.ndarray): Square, symmetric matrix.
        jitter (bool): Retry once with JITTER * I added when A is not numerically positive-definite.

    Raises:
        RejectedInputError: A is not square or not symmetric.
        DecompositionError: A is not positive-definite; names the failing pivot.
    """

    A = np.asarray(A, dtype=np.float64)

    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise RejectedInputError(f"Cholesky requires a square matrix, given shape {A.shape}")

    if not np.allclose(A, A.T, rtol=0.0, atol=SYMMETRY_TOLERANCE * max(1.0, float(np.max(np.abs(A), initial=0.0)))):
        raise RejectedInputError("Cholesky requires a symmetric matrix")

    factor, info = lapack.dpotrf(A, lower=1, clean=1)

    if info > 0 and jitter:
        factor, info = lapack.dpotrf(A + JITTER * np.eye(A.shape[0]), lower=1, clean=1)

    if info > 0:
        raise DecompositionError("Matrix is not positive-definite", pivot=int(info) - 1)

    assert info == 0, "LAPACK dpotrf rejected its arguments: {}".format(info)

    return factor


def solve_with_cholesky(L: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solves (L @ L.T) x = b for a lower-triangular factor L."""

    y = solve_triangular(L, b, lower=True)

    return solve_triangular(L.T, y, lower=False)


def spd_inverse(A: np.ndarray, *, jitter: bool = True) -> np.ndarray:
    """Inverse of a symmetric positive-definite matrix via its Cholesky factor."""

    L = cholesky(symmetrize(A), jitter=jitter)

    return symmetrize(solve_with_cholesky(L, np.eye(A.shape[0])))
