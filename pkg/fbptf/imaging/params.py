
from dataclasses import dataclass

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.imaging.color import rgb_to_hsv
from fbptf.imaging.image import ImageRGB


@dataclass(frozen=True)
class ImageParams:
    """Global appearance of an image, each on a [0, 1] scale.

    Attributes:
        saturation (float): Mean HSV saturation.
        brightness (float): Mean HSV value.
        contrast (float): Population standard deviation of the HSV value.
    """

    saturation: float
    brightness: float
    contrast: float

    def __post_init__(self):

        for name in ("saturation", "brightness", "contrast"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise RejectedInputError(f"{name} must be in [0, 1], given {value}")

    @classmethod
    def from_array(cls, values) -> "ImageParams":

        values = np.asarray(values, dtype=np.float64).ravel()

        if values.size != 3:
            raise RejectedInputError(f"Expected 3 parameters, given {values.size}")

        return cls(*(float(value) for value in values))

    def as_array(self) -> np.ndarray:

        return np.array([self.saturation, self.brightness, self.contrast])


def params_from_hsv(hsv: np.ndarray) -> ImageParams:

    value = hsv[..., 2]

    return ImageParams(
        saturation=float(hsv[..., 1].mean()),
        brightness=float(value.mean()),
        contrast=float(value.std()),
    )


def measure_params(img: ImageRGB) -> ImageParams:

    return params_from_hsv(rgb_to_hsv(img.as_unit()))
