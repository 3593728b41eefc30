
from dataclasses import dataclass
from typing import Optional, Tuple

from fbptf.errors import RejectedInputError


Interval = Tuple[float, float]


@dataclass(frozen=True)
class SyntheticConfig:
    """Size and law of the synthetic benchmark.

    Attributes:
        n (int): Number of samples.
        k (int): Parameter count; the generating law needs exactly three.
        l (int): Feature length.
        m (int): Versions per sample.
        eta (float): Weight of the nonlinear parameter term against the feature-norm term.
        r1_range (Interval): Interval of the exponent base r1.
        r2_range (Interval): Interval of the sigmoid slope r2.
        r3_range (Interval): Interval of the power r3.
        norm_scale (Optional[float]): Factor applied to ||F_i||; 1 / sqrt(l) when omitted.
        seed (int): Root seed.
    """

    n: int = 1000
    k: int = 3
    l: int = 50
    m: int = 4
    eta: float = 0.5
    r1_range: Interval = (0.5, 2.0)
    r2_range: Interval = (-3.0, 3.0)
    r3_range: Interval = (0.5, 3.0)
    norm_scale: Optional[float] = None
    seed: int = 0

    def __post_init__(self):

        if self.k != 3:
            raise RejectedInputError(f"The synthetic law is defined for k = 3 parameters, given {self.k}")

        if min(self.n, self.l, self.m) < 1:
            raise RejectedInputError("n, l and m must be positive")

        if not 0.0 <= self.eta <= 1.0:
            raise RejectedInputError(f"eta must be in [0, 1], given {self.eta}")

        for name in ("r1_range", "r2_range", "r3_range"):
            low, high = getattr(self, name)
            if not low <= high:
                raise RejectedInputError(f"{name} must be an ordered interval, given {(low, high)}")

        # r1^a needs a positive base, A^r3 a positive power
        if self.r1_range[0] <= 0 or self.r3_range[0] <= 0:
            raise RejectedInputError("r1 and r3 must be drawn from positive intervals")

    def get_norm_scale(self) -> float:

        return self.l ** -0.5 if self.norm_scale is None else self.norm_scale
