"""Assembly of min ||X||_{2,1} s.t. ZX = B from features and a target factor."""

from typing import List, Optional, Tuple

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.l21.config import L21Config


Blocks = Tuple[int, int, int]


class L21Problem:
    """An instance of min ||X||_{2,1} subject to ZX = B.

    Args:
        Z (np.ndarray): Constraint matrix.
        B (np.ndarray): Right-hand side with as many rows as Z.
        blocks (Optional[Blocks]): Split sizes (N, D, 1) of the stacked unknown [E; P; delta Q].
            Problems without blocks are solved without structural shortcuts.
    """

    def __init__(self, Z: np.ndarray, B: np.ndarray, blocks: Optional[Blocks] = None):

        Z = np.atleast_2d(np.asarray(Z, dtype=np.float64))
        B = np.asarray(B, dtype=np.float64)
        if B.ndim == 1:
            B = B.reshape(-1, 1)

        if B.shape[0] != Z.shape[0]:
            raise RejectedInputError(f"B has {B.shape[0]} rows, Z has {Z.shape[0]}")

        if blocks is not None and sum(blocks) != Z.shape[1]:
            raise RejectedInputError(f"Blocks {blocks} do not add up to the {Z.shape[1]} columns of Z")

        self._Z = Z
        self._B = B
        self._blocks = blocks

        self._Z.flags.writeable = False
        self._B.flags.writeable = False

    def get_Z(self) -> np.ndarray:

        return self._Z

    def get_B(self) -> np.ndarray:

        return self._B

    def get_blocks(self) -> Optional[Blocks]:

        return self._blocks

    def has_diagonal_lead(self) -> bool:
        """Whether the first block of Z is diagonal (true for assembled coupling problems)."""

        if self._blocks is None:
            return False

        n = self._blocks[0]
        lead = self._Z[:, :n]

        return n == self._Z.shape[0] and np.count_nonzero(lead - np.diag(np.diag(lead))) == 0


class L21Solution:
    """Solution X of an L21Problem with the objective and ||ZX - B||_F of every iterate."""

    def __init__(self, X: np.ndarray, objective_trace: List[float], residual_trace: List[float], blocks: Optional[Blocks]):

        assert len(objective_trace) == len(residual_trace), "One residual per objective value expected"

        self._X = X
        self._objective_trace = list(objective_trace)
        self._residual_trace = list(residual_trace)
        self._blocks = blocks

    def get_X(self) -> np.ndarray:

        return self._X

    def get_objective_trace(self) -> List[float]:

        return list(self._objective_trace)

    def get_objective(self) -> float:

        return self._objective_trace[-1]

    def get_residual_trace(self) -> List[float]:

        return list(self._residual_trace)

    def get_feasibility_residual(self) -> float:

        return self._residual_trace[-1]

    def get_blocks(self) -> Optional[Blocks]:

        return self._blocks

    def get_iteration_count(self) -> int:

        return len(self._objective_trace) - 1


def assemble_problem(F: np.ndarray, U: np.ndarray, config: L21Config) -> L21Problem:
    """Builds Z = [-beta I_N | F^T | delta^-1 1^N] and B = U^T.

    Args:
        F (np.ndarray): D x N feature matrix.
        U (np.ndarray): D x N target factor.
        config (L21Config): Weights; without intercept the last column is omitted.
    """

    F = np.asarray(F, dtype=np.float64)
    U = np.asarray(U, dtype=np.float64)

    if F.ndim != 2 or F.shape != U.shape or min(F.shape) < 1:
        raise RejectedInputError(f"F and U must share both (non-zero) dimensions, given {F.shape} and {U.shape}")

    dimension, count = F.shape

    columns = [-config.beta * np.eye(count), F.T]
    if config.intercept:
        columns.append(np.full((count, 1), 1.0 / config.delta))

    return L21Problem(
        np.hstack(columns),
        U.T.copy(),
        (count, dimension, 1 if config.intercept else 0),
    )


def extract_pq(solution: L21Solution, config: L21Config) -> Tuple[np.ndarray, np.ndarray]:
    """Splits the stacked unknown [E; P; delta Q] into P (D x D) and Q (1 x D)."""

    blocks = solution.get_blocks()

    assert blocks is not None, "Solution carries no block structure"

    count, dimension, intercept_rows = blocks
    X = solution.get_X()

    P = X[count:count + dimension].copy()

    if intercept_rows:
        Q = X[count + dimension:count + dimension + 1] / config.delta
    else:
        Q = np.zeros((1, X.shape[1]))

    return P, Q


def extract_e(solution: L21Solution) -> np.ndarray:
    """The residual block E of the stacked unknown."""

    blocks = solution.get_blocks()

    assert blocks is not None, "Solution carries no block structure"

    return solution.get_X()[:blocks[0]].copy()
