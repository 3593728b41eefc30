"""Fixed-length appearance descriptor of an image.

Layout, with the default configuration:
    [0, 1274)     joint HSV histogram, hue-major (26 x 7 x 7), summing to 1
    [1274, 1418)  mean value per cell of a 12 x 12 grid, row-major
    [1418, 1562)  mean saturation per cell
    [1562, 1706)  standard deviation of the value per cell
    [1706, 1709)  saturation, brightness, contrast of the whole image
"""

from dataclasses import dataclass

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.imaging.color import rgb_to_hsv
from fbptf.imaging.image import ImageRGB
from fbptf.imaging.params import params_from_hsv


@dataclass(frozen=True)
class FeatureConfig:

    hue_bins: int = 26
    sat_bins: int = 7
    val_bins: int = 7
    grid_rows: int = 12
    grid_cols: int = 12

    def __post_init__(self):

        if min(self.hue_bins, self.sat_bins, self.val_bins, self.grid_rows, self.grid_cols) < 1:
            raise RejectedInputError("Bin and grid counts must be positive")

    def get_histogram_length(self) -> int:

        return self.hue_bins * self.sat_bins * self.val_bins

    def get_cell_count(self) -> int:

        return self.grid_rows * self.grid_cols

    def get_length(self) -> int:

        return self.get_histogram_length() + 3 * self.get_cell_count() + 3


def color_histogram(hsv: np.ndarray, cfg: FeatureConfig) -> np.ndarray:

    samples = hsv.reshape(-1, 3)

    histogram, _ = np.histogramdd(
        samples,
        bins=(cfg.hue_bins, cfg.sat_bins, cfg.val_bins),
        range=((0.0, 1.0), (0.0, 1.0), (0.0, 1.0)),
    )

    return histogram.ravel() / samples.shape[0]


def grid_statistics(hsv: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """Per-cell mean value, mean saturation and value deviation, each block row-major."""

    row_groups = np.array_split(np.arange(hsv.shape[0]), cfg.grid_rows)
    col_groups = np.array_split(np.arange(hsv.shape[1]), cfg.grid_cols)

    statistics = np.empty((3, cfg.grid_rows, cfg.grid_cols))

    for r, rows in enumerate(row_groups):
        for c, cols in enumerate(col_groups):
            cell = hsv[rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1]
            statistics[0, r, c] = cell[..., 2].mean()
            statistics[1, r, c] = cell[..., 1].mean()
            statistics[2, r, c] = cell[..., 2].std()

    return statistics.reshape(-1)


def extract_features(img: ImageRGB, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:

    if img.get_height() < cfg.grid_rows or img.get_width() < cfg.grid_cols:
        raise RejectedInputError(
            f"Image of {img.get_width()} x {img.get_height()} pixels is smaller than the "
            f"{cfg.grid_cols} x {cfg.grid_rows} feature grid"
        )

    hsv = rgb_to_hsv(img.as_unit())

    return np.concatenate([
        color_histogram(hsv, cfg),
        grid_statistics(hsv, cfg),
        params_from_hsv(hsv).as_array(),
    ])
