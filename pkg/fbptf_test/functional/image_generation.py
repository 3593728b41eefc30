
from typing import List

import numpy as np

from fbptf.imaging import ImageRGB
from fbptf.imaging.color import hsv_to_rgb


def generate_image(width: int = 48, height: int = 36, seed: int = 0) -> ImageRGB:
    """Smooth hue, saturation and value gradients with mild texture, away from the clamping bounds."""

    generator = np.random.default_rng(seed)

    y, x = np.mgrid[0:height, 0:width]
    x = x / max(1, width - 1)
    y = y / max(1, height - 1)

    hue = np.mod(x * generator.uniform(0.2, 0.6) + generator.uniform(), 1.0)
    saturation = generator.uniform(0.3, 0.5) + 0.2 * y
    value = generator.uniform(0.35, 0.5) + 0.15 * x + 0.1 * np.sin(6.0 * y)

    texture = 0.04 * generator.standard_normal((height, width))

    hsv = np.stack([
        hue,
        np.clip(saturation + texture, 0.05, 0.95),
        np.clip(value + texture, 0.05, 0.95),
    ], axis=-1)

    return ImageRGB.from_unit(hsv_to_rgb(hsv))


def generate_corpus(count: int, width: int = 48, height: int = 36, seed: int = 0) -> List[ImageRGB]:

    return [generate_image(width, height, seed + index) for index in range(count)]


def uniform_image(level: int, width: int = 16, height: int = 16) -> ImageRGB:

    return ImageRGB(np.full((height, width, 3), level, dtype=np.uint8))
