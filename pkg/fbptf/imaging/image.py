
import numpy as np

from fbptf.errors import RejectedInputError


class ImageRGB:
    """8-bit RGB raster, row-major with shape height x width x 3."""

    def __init__(self, pixels: np.ndarray):

        pixels = np.asarray(pixels)

        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise RejectedInputError(f"Expected height x width x 3 pixels, given shape {pixels.shape}")

        if pixels.shape[0] * pixels.shape[1] < 1:
            raise RejectedInputError("Image has no pixels")

        if pixels.dtype != np.uint8:
            if np.any(pixels < 0) or np.any(pixels > 255):
                raise RejectedInputError("Channel values must be in [0, 255]")
            pixels = pixels.astype(np.uint8)

        self._pixels = np.array(pixels, dtype=np.uint8)
        self._pixels.flags.writeable = False

    @classmethod
    def from_unit(cls, rgb: np.ndarray) -> "ImageRGB":
        """Quantizes [0, 1] channel values, clamping first."""

        return cls(np.rint(np.clip(rgb, 0.0, 1.0) * 255.0).astype(np.uint8))

    def get_pixels(self) -> np.ndarray:

        return self._pixels

    def get_width(self) -> int:

        return self._pixels.shape[1]

    def get_height(self) -> int:

        return self._pixels.shape[0]

    def as_unit(self) -> np.ndarray:
        """Channel values scaled to [0, 1]."""

        return self._pixels.astype(np.float64) / 255.0

    def __eq__(self, other) -> bool:

        return isinstance(other, ImageRGB) and np.array_equal(self._pixels, other._pixels)
