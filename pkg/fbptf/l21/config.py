
from dataclasses import dataclass

from fbptf.errors import RejectedInputError


@dataclass(frozen=True)
class L21Config:
    """Settings of the joint l21 coupling fit.

    Attributes:
        beta (float): Weight of the reconstruction residual E.
        delta (float): gamma / beta, weight of the intercept row.
        epsilon (float): Lower bound on row norms inside the reweighting.
        max_iter (int): Iteration budget.
        tol (float): Relative objective change that stops the iteration.
        intercept (bool): Fit the intercept row Q; U = F^T P only when disabled.
    """

    beta: float = 0.1
    delta: float = 3.0
    epsilon: float = 1e-10
    max_iter: int = 200
    tol: float = 1e-8
    intercept: bool = True

    def __post_init__(self):

        for name in ("beta", "delta", "epsilon", "tol"):
            if not getattr(self, name) > 0:
                raise RejectedInputError(f"L21Config.{name} must be positive, given {getattr(self, name)}")

        if self.max_iter < 1:
            raise RejectedInputError(f"L21Config.max_iter must be at least 1, given {self.max_iter}")

    @classmethod
    def from_beta_gamma(cls, beta: float, gamma: float, **kwargs) -> "L21Config":
        """Builds a config from a (beta, gamma) pair; only delta = gamma / beta is kept."""

        return cls(beta=beta, delta=gamma / beta, **kwargs)
