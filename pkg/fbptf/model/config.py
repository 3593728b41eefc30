
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.l21.config import L21Config
from fbptf.numerics.gaussian_wishart import GaussianWishartPrior


@dataclass(frozen=True)
class HyperPriorConfig:
    """Fixed constants of the hyper-priors and the initialization.

    The Gaussian-Wishart prior shared by U, V and T defaults to mu0 = 0, beta0 = 1,
    W0 = I_D, nu0 = D. The precision alpha has a one-dimensional Wishart prior
    with scale `alpha_scale` and `alpha_dof` degrees of freedom.
    """

    gw: Optional[GaussianWishartPrior] = None
    alpha_scale: float = 1.0
    alpha_dof: float = 1.0
    sigma2_init: float = 0.01
    alpha_init: float = 2.0

    def __post_init__(self):

        if not self.alpha_scale > 0:
            raise RejectedInputError(f"alpha_scale must be positive, given {self.alpha_scale}")

        if not self.alpha_dof >= 1:
            raise RejectedInputError(f"alpha_dof must be at least 1, given {self.alpha_dof}")

        if not self.sigma2_init >= 0:
            raise RejectedInputError(f"sigma2_init must be non-negative, given {self.sigma2_init}")

        if not self.alpha_init > 0:
            raise RejectedInputError(f"alpha_init must be positive, given {self.alpha_init}")

    def get_prior(self, dimension: int) -> GaussianWishartPrior:

        if self.gw is None:
            return GaussianWishartPrior.default(dimension)

        if self.gw.get_dimension() != dimension:
            raise RejectedInputError(
                f"Configured Gaussian-Wishart prior has dimension {self.gw.get_dimension()}, model needs {dimension}"
            )

        return self.gw


@dataclass(frozen=True)
class TrainConfig:
    """Gibbs chain settings.

    Attributes:
        sweeps (int): Total number of Gibbs sweeps.
        burn_in (int): Initial sweeps whose samples are discarded; None means 20% of sweeps.
        l21 (L21Config): Settings of the per-sweep coupling fit.
        seed (int): Root seed of all random streams.
        feature_coupling (bool): Constrain U to F^T P + Q; disabled this is D-BPTF.
        track_rmse_every (int): Sweep interval of the RMSE trace.
        freeze_t (bool): Keep T fixed at all-ones (two-factor BPMF).
        thin (int): Keep every thin-th post-burn-in sample.
        workers (int): Threads drawing the columns of one block.
    """

    sweeps: int = 50
    burn_in: Optional[int] = None
    l21: L21Config = field(default_factory=L21Config)
    seed: int = 0
    feature_coupling: bool = True
    track_rmse_every: int = 1
    freeze_t: bool = False
    thin: int = 1
    workers: int = 1

    def __post_init__(self):

        if self.sweeps < 1:
            raise RejectedInputError(f"sweeps must be positive, given {self.sweeps}")

        if not 0 <= self.get_burn_in() < self.sweeps:
            raise RejectedInputError(f"burn_in ({self.get_burn_in()}) must be in [0, sweeps={self.sweeps})")

        for name in ("track_rmse_every", "thin", "workers"):
            if getattr(self, name) < 1:
                raise RejectedInputError(f"{name} must be at least 1, given {getattr(self, name)}")

    def get_burn_in(self) -> int:

        return self.sweeps // 5 if self.burn_in is None else self.burn_in


PARAMETER_NAMES = ("saturation", "brightness", "contrast")


@dataclass(frozen=True)
class ClipConfig:
    """Upward (lambda) and downward (zeta) multipliers of the clipping envelope per parameter."""

    upward: Tuple[float, ...] = (0.4, 0.4, 0.05)
    downward: Tuple[float, ...] = (0.3, 0.3, 0.01)

    def __post_init__(self):

        if len(self.upward) != len(self.downward):
            raise RejectedInputError("Clip multipliers must have equal lengths")

        if any(value < 0 for value in self.upward + self.downward):
            raise RejectedInputError("Clip multipliers must be non-negative")

    @classmethod
    def collapsed(cls, count: int) -> "ClipConfig":
        """Collapses every prediction onto the input parameters."""

        return cls(upward=(0.0,) * count, downward=(0.0,) * count)

    def get_upward(self) -> np.ndarray:

        return np.asarray(self.upward, dtype=np.float64)

    def get_downward(self) -> np.ndarray:

        return np.asarray(self.downward, dtype=np.float64)
