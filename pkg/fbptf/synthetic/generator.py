"""Synthetic benchmark linking parameters A, features F and version parameters A'.

Every feature row j uses its own coefficients (r1, r2, r3):
    F_ji = r1^A_1i + sigmoid(r2 A_2i) + A_3i^r3
and every (parameter k, version m) pair draws fresh coefficients:
    A'_kim = eta (r1^A_1i + sigmoid(r2 A_2i) + A_3i^r3) + (1 - eta) s ||F_i||
"""

import numpy as np
from scipy.special import expit

from fbptf.numerics.random import RngStream
from fbptf.synthetic.config import SyntheticConfig


class SyntheticDataset:
    """Generated arrays together with the drawn coefficient tables.

    Args:
        A (np.ndarray): K x N input parameters in [0, 1].
        F (np.ndarray): L x N features.
        A_prime (np.ndarray): K x N x M version parameters.
        feature_coefficients (np.ndarray): L x 3 table of (r1, r2, r3) per feature row.
        version_coefficients (np.ndarray): K x M x 3 table of (r1, r2, r3) per target.
        config (SyntheticConfig): Generating configuration.
    """

    def __init__(self, A, F, A_prime, feature_coefficients, version_coefficients, config: SyntheticConfig):

        self._A = A
        self._F = F
        self._A_prime = A_prime
        self._feature_coefficients = feature_coefficients
        self._version_coefficients = version_coefficients
        self._config = config

        for array in (A, F, A_prime, feature_coefficients, version_coefficients):
            array.flags.writeable = False

    def get_A(self) -> np.ndarray:

        return self._A

    def get_F(self) -> np.ndarray:

        return self._F

    def get_A_prime(self) -> np.ndarray:

        return self._A_prime

    def get_feature_coefficients(self) -> np.ndarray:

        return self._feature_coefficients

    def get_version_coefficients(self) -> np.ndarray:

        return self._version_coefficients

    def get_config(self) -> SyntheticConfig:

        return self._config


def nonlinear_term(A: np.ndarray, r1: float, r2: float, r3: float) -> np.ndarray:
    """r1^A_1 + sigmoid(r2 A_2) + A_3^r3 for every column of a 3 x N parameter matrix."""

    return np.power(r1, A[0]) + expit(r2 * A[1]) + np.power(A[2], r3)


def draw_coefficients(config: SyntheticConfig, count: int, rng: RngStream) -> np.ndarray:
    """count x 3 table of (r1, r2, r3) drawn uniformly from the configured intervals."""

    generator = rng.generator()

    return np.column_stack([
        generator.uniform(low, high, size=count)
        for low, high in (config.r1_range, config.r2_range, config.r3_range)
    ])


def generate(config: SyntheticConfig) -> SyntheticDataset:

    rng = RngStream(config.seed).derive("synthetic")

    A = rng.derive("A").generator().uniform(0.0, 1.0, size=(config.k, config.n))

    feature_coefficients = draw_coefficients(config, config.l, rng.derive("feature-coefficients"))
    F = np.vstack([nonlinear_term(A, *coefficients) for coefficients in feature_coefficients])

    version_coefficients = draw_coefficients(config, config.k * config.m, rng.derive("version-coefficients"))
    version_coefficients = version_coefficients.reshape(config.k, config.m, 3)

    feature_norm = config.get_norm_scale() * np.linalg.norm(F, axis=0)

    A_prime = np.empty((config.k, config.n, config.m))
    for k in range(config.k):
        for m in range(config.m):
            A_prime[k, :, m] = (
                config.eta * nonlinear_term(A, *version_coefficients[k, m])
                + (1.0 - config.eta) * feature_norm
            )

    return SyntheticDataset(A, F, A_prime, feature_coefficients, version_coefficients, config)
