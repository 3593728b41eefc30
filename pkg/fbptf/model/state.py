"""Mutable state of one Gibbs chain."""

from typing import Dict, Optional, Tuple

import numpy as np

from fbptf.model.dims import ModelDims


FACTORS = ("U", "V", "T")


def reconstruct(F: np.ndarray, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Image factor implied by the coupling: the transpose of F^T P + 1 Q, shape D x N."""

    return (F.T @ P + Q).T


class LatentState:
    """Factor matrices of one Gibbs sample.

    Args:
        U (np.ndarray): D x N sampled image factor.
        V (np.ndarray): D x M version factor.
        T (np.ndarray): D x K parameter factor.
        P (Optional[np.ndarray]): D x D coupling matrix.
        Q (Optional[np.ndarray]): 1 x D coupling intercept.
        U_hat (Optional[np.ndarray]): D x N coupled image factor; U itself when omitted.
    """

    def __init__(
        self,
        U: np.ndarray,
        V: np.ndarray,
        T: np.ndarray,
        *,
        P: Optional[np.ndarray] = None,
        Q: Optional[np.ndarray] = None,
        U_hat: Optional[np.ndarray] = None,
    ):
        dimension = U.shape[0]

        assert V.shape[0] == dimension and T.shape[0] == dimension, "Factor matrices disagree on D"

        self._U = U
        self._V = V
        self._T = T
        self._P = np.zeros((dimension, dimension)) if P is None else P
        self._Q = np.zeros((1, dimension)) if Q is None else Q
        self._U_hat = U.copy() if U_hat is None else U_hat

    def get_dims(self) -> ModelDims:

        return ModelDims(self._U.shape[1], self._V.shape[1], self._T.shape[1], self._U.shape[0])

    def get_U(self) -> np.ndarray:

        return self._U

    def get_V(self) -> np.ndarray:

        return self._V

    def get_T(self) -> np.ndarray:

        return self._T

    def get_P(self) -> np.ndarray:

        return self._P

    def get_Q(self) -> np.ndarray:

        return self._Q

    def get_U_hat(self) -> np.ndarray:

        return self._U_hat

    def get_factor(self, name: str) -> np.ndarray:
        """The factor the hyper-parameters of `name` are conditioned on (U_hat for U)."""

        return {"U": self._U_hat, "V": self._V, "T": self._T}[name]

    def replace(self, **factors) -> "LatentState":
        """Copy of this state with the given factors swapped in."""

        arguments = dict(U=self._U, V=self._V, T=self._T, P=self._P, Q=self._Q, U_hat=self._U_hat)
        arguments.update(factors)

        U = arguments.pop("U")
        V = arguments.pop("V")
        T = arguments.pop("T")

        return LatentState(U, V, T, **arguments)

    def is_finite(self) -> bool:

        return all(
            np.all(np.isfinite(matrix))
            for matrix in (self._U, self._V, self._T, self._P, self._Q, self._U_hat)
        )


class HyperState:
    """Precision alpha and the (mu, Lambda) hyper-parameters of U, V and T."""

    def __init__(self, alpha: float, thetas: Dict[str, Tuple[np.ndarray, np.ndarray]]):

        assert alpha > 0, "alpha must be positive"
        assert set(thetas) == set(FACTORS), "Expecting hyper-parameters for U, V and T"

        self._alpha = float(alpha)
        self._thetas = dict(thetas)

    @classmethod
    def initial(cls, dimension: int, alpha: float) -> "HyperState":
        """mu = 0 and Lambda = I for every factor."""

        return cls(alpha, {
            name: (np.zeros(dimension), np.eye(dimension))
            for name in FACTORS
        })

    def get_alpha(self) -> float:

        return self._alpha

    def get_mu(self, factor: str) -> np.ndarray:

        return self._thetas[factor][0]

    def get_lambda(self, factor: str) -> np.ndarray:

        return self._thetas[factor][1]

    def get_theta(self, factor: str) -> Tuple[np.ndarray, np.ndarray]:

        return self._thetas[factor]

    def with_alpha(self, alpha: float) -> "HyperState":

        return HyperState(alpha, self._thetas)

    def with_thetas(self, thetas: Dict[str, Tuple[np.ndarray, np.ndarray]]) -> "HyperState":

        merged = dict(self._thetas)
        merged.update(thetas)

        return HyperState(self._alpha, merged)


class GibbsWorkspace:
    """Design buffers shared by the column samplers of one index block.

    For the U block the design rows are Y_jk = V_j * T_k, for the V block
    Y_ik = U_hat_i * T_k and for the T block Y_ij = U_hat_i * V_j. The buffers are
    read-only while a block is drawn, so columns may be drawn concurrently.
    """

    def __init__(self, dims: ModelDims):

        self._dims = dims

        self.y_jk = np.empty((dims.M, dims.K, dims.D))
        self.y_ik = np.empty((dims.N, dims.K, dims.D))
        self.y_ij = np.empty((dims.N, dims.M, dims.D))

    def prepare_u_block(self, state: LatentState) -> None:

        np.multiply(state.get_V().T[:, np.newaxis, :], state.get_T().T[np.newaxis, :, :], out=self.y_jk)

    def prepare_v_block(self, state: LatentState) -> None:

        np.multiply(state.get_U_hat().T[:, np.newaxis, :], state.get_T().T[np.newaxis, :, :], out=self.y_ik)

    def prepare_t_block(self, state: LatentState) -> None:

        np.multiply(state.get_U_hat().T[:, np.newaxis, :], state.get_V().T[np.newaxis, :, :], out=self.y_ij)