
from dataclasses import dataclass
from typing import Optional

from fbptf.errors import RejectedInputError
from fbptf.model.config import TrainConfig


BASELINE_KINDS = ("bpmf", "dbptf", "mlr", "wknn")
MATRIX_FACTORIZATION_KINDS = ("bpmf", "dbptf")


@dataclass(frozen=True)
class BaselineSpec:
    """Settings of one reference competitor.

    Attributes:
        kind (str): One of bpmf, dbptf, mlr, wknn.
        latent_dim (int): Latent dimension of the factorization kinds.
        sweeps (int): Gibbs sweeps of the factorization kinds.
        burn_in (Optional[int]): Discarded sweeps; 20% of sweeps when omitted.
        k (int): Neighbour count of wknn.
        distance_epsilon (float): Added to neighbour distances before inverting them.
        seed (int): Root seed of the factorization chains.
    """

    kind: str
    latent_dim: int = 10
    sweeps: int = 50
    burn_in: Optional[int] = None
    k: int = 5
    distance_epsilon: float = 1e-8
    seed: int = 0

    def __post_init__(self):

        if self.kind not in BASELINE_KINDS:
            raise RejectedInputError(f"Unknown baseline kind '{self.kind}', expecting one of {', '.join(BASELINE_KINDS)}")

        if self.latent_dim < 1:
            raise RejectedInputError(f"latent_dim must be positive, given {self.latent_dim}")

        if self.k < 1:
            raise RejectedInputError(f"k must be positive, given {self.k}")

        if not self.distance_epsilon > 0:
            raise RejectedInputError(f"distance_epsilon must be positive, given {self.distance_epsilon}")

    def is_matrix_factorization(self) -> bool:

        return self.kind in MATRIX_FACTORIZATION_KINDS

    def get_train_config(self, **overrides) -> TrainConfig:
        """Chain settings of the factorization kinds: no feature coupling, T frozen for bpmf."""

        settings = dict(
            sweeps=self.sweeps,
            burn_in=self.burn_in,
            seed=self.seed,
            feature_coupling=False,
            freeze_t=self.kind == "bpmf",
        )
        settings.update(overrides)

        return TrainConfig(**settings)
