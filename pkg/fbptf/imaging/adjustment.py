"""Applies target parameters to an image by global channel adjustments.

Starting from the HSV planes (H, S0, V0) of the input, the output is rendered as
    V = clamp(mean(V0) + c (V0 - mean(V0)) + b),  S = clamp(s S0)
Each of c (contrast), b (brightness) and s (saturation) is fitted by bisection
against measurements of the quantized result. Contrast is fitted first since it
moves brightness and saturation; brightness and saturation then alternate, with a
contrast refit whenever clamping pushed contrast out of tolerance.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from fbptf.errors import RejectedInputError
from fbptf.imaging.color import hsv_to_rgb, rgb_to_hsv
from fbptf.imaging.image import ImageRGB
from fbptf.imaging.params import ImageParams, measure_params


logger = logging.getLogger(__name__)

CONTRAST_RANGE = (0.0, 64.0)
BRIGHTNESS_RANGE = (-1.0, 1.0)
SATURATION_RANGE = (0.0, 64.0)


@dataclass(frozen=True)
class AdjustmentConfig:
    """Tolerance per axis and iteration cap of each bisection and of the alternation."""

    tol: float = 0.01
    max_iter: int = 40

    def __post_init__(self):

        if not self.tol > 0:
            raise RejectedInputError(f"tol must be positive, given {self.tol}")

        if self.max_iter < 1:
            raise RejectedInputError(f"max_iter must be positive, given {self.max_iter}")


class AdjustmentResult:

    def __init__(self, image: ImageRGB, achieved: ImageParams, converged: Dict[str, bool]):

        self._image = image
        self._achieved = achieved
        self._converged = dict(converged)

    def get_image(self) -> ImageRGB:

        return self._image

    def get_achieved(self) -> ImageParams:

        return self._achieved

    def get_converged(self) -> Dict[str, bool]:
        """Whether each of saturation, brightness and contrast ended within tolerance."""

        return dict(self._converged)

    def is_converged(self) -> bool:

        return all(self._converged.values())


class _Renderer:

    def __init__(self, img: ImageRGB):

        hsv = rgb_to_hsv(img.as_unit())

        self._hue = hsv[..., 0]
        self._saturation = hsv[..., 1]
        self._value = hsv[..., 2]
        self._mean = float(self._value.mean())

    def render(self, c: float, b: float, s: float) -> ImageRGB:

        value = np.clip(self._mean + c * (self._value - self._mean) + b, 0.0, 1.0)
        saturation = np.clip(s * self._saturation, 0.0, 1.0)

        return ImageRGB.from_unit(hsv_to_rgb(np.stack([self._hue, saturation, value], axis=-1)))


def _bisect(measure: Callable[[float], float], target: float, bounds: Tuple[float, float], start: float, tol: float, max_iter: int) -> float:
    """Root of a non-decreasing measure(x) = target; the nearer bound when the target is out of reach."""

    if abs(measure(start) - target) <= tol:
        return start

    low, high = bounds
    low_value, high_value = measure(low), measure(high)

    if target <= low_value:
        return low

    if target >= high_value:
        return high

    middle = start
    for _ in range(max_iter):

        middle = 0.5 * (low + high)
        value = measure(middle)

        if abs(value - target) <= tol:
            break

        if value < target:
            low = middle
        else:
            high = middle

    return middle


def apply_params(img: ImageRGB, target: ImageParams, tol: float = 0.01, max_iter: int = 40) -> AdjustmentResult:
    """Best-effort adjustment of `img` towards `target`.

    Never raises on non-convergence; the result reports the achieved parameters and
    which axes ended within `tol`.
    """

    cfg = AdjustmentConfig(tol=tol, max_iter=max_iter)
    renderer = _Renderer(img)

    c, b, s = 1.0, 0.0, 1.0

    def within(params: ImageParams) -> Dict[str, bool]:

        return {
            name: abs(getattr(params, name) - getattr(target, name)) <= cfg.tol
            for name in ("saturation", "brightness", "contrast")
        }

    c = _bisect(lambda x: measure_params(renderer.render(x, b, s)).contrast, target.contrast, CONTRAST_RANGE, c, cfg.tol, cfg.max_iter)

    achieved = measure_params(renderer.render(c, b, s))

    rounds = 0
    while rounds < cfg.max_iter and not all(within(achieved).values()):

        rounds += 1
        previous = (c, b, s)

        b = _bisect(lambda x: measure_params(renderer.render(c, x, s)).brightness, target.brightness, BRIGHTNESS_RANGE, b, cfg.tol, cfg.max_iter)
        s = _bisect(lambda x: measure_params(renderer.render(c, b, x)).saturation, target.saturation, SATURATION_RANGE, s, cfg.tol, cfg.max_iter)

        achieved = measure_params(renderer.render(c, b, s))

        if not within(achieved)["contrast"]:
            c = _bisect(lambda x: measure_params(renderer.render(x, b, s)).contrast, target.contrast, CONTRAST_RANGE, c, cfg.tol, cfg.max_iter)
            achieved = measure_params(renderer.render(c, b, s))

        # a fixed point: the remaining axes are out of reach
        if (c, b, s) == previous:
            break

    converged = within(achieved)

    logger.debug("adjusted to {} after {} rounds (converged: {})".format(achieved, rounds, converged))

    return AdjustmentResult(renderer.render(c, b, s), achieved, converged)
