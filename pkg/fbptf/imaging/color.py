"""RGB <-> HSV conversion on [0, 1] channel values; hue is a fraction of a turn."""

import numpy as np
from matplotlib import colors

from fbptf.errors import RejectedInputError


def _unit_channels(array: np.ndarray, name: str) -> np.ndarray:

    array = np.asarray(array, dtype=np.float64)

    if array.shape[-1:] != (3,):
        raise RejectedInputError(f"{name} values need a trailing axis of length 3, given shape {array.shape}")

    if np.any(array < 0.0) or np.any(array > 1.0):
        raise RejectedInputError(f"{name} values must lie in [0, 1]")

    return array


def rgb_to_hsv(rgb: np.ndarray) -> np.ndarray:

    return colors.rgb_to_hsv(_unit_channels(rgb, "RGB"))


def hsv_to_rgb(hsv: np.ndarray) -> np.ndarray:

    return colors.hsv_to_rgb(_unit_channels(hsv, "HSV"))
