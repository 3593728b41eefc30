import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.imaging import ImageParams, ImageRGB, measure_params
from fbptf_test.functional.image_generation import uniform_image


def test_uniform_gray():

    params = measure_params(uniform_image(128))

    assert params.saturation == 0.0
    assert params.brightness == pytest.approx(128.0 / 255.0)
    assert params.contrast == 0.0


def test_half_black_half_white():

    pixels = np.zeros((8, 8, 3), dtype=np.uint8)
    pixels[:, 4:] = 255

    params = measure_params(ImageRGB(pixels))

    assert params.brightness == pytest.approx(0.5)
    assert params.contrast == pytest.approx(0.5)
    assert params.saturation == 0.0


def test_saturated_color():

    pixels = np.zeros((4, 4, 3), dtype=np.uint8)
    pixels[..., 0] = 255

    assert measure_params(ImageRGB(pixels)).as_array() == pytest.approx([1.0, 1.0, 0.0])


def test_params_are_bounded():

    with pytest.raises(RejectedInputError):
        ImageParams(1.2, 0.5, 0.5)

    with pytest.raises(RejectedInputError):
        ImageParams.from_array([0.1, 0.2])

    assert ImageParams.from_array([0.1, 0.2, 0.3]) == ImageParams(0.1, 0.2, 0.3)


def test_image_validation():

    with pytest.raises(RejectedInputError):
        ImageRGB(np.zeros((4, 4)))

    with pytest.raises(RejectedInputError):
        ImageRGB(np.full((2, 2, 3), 300))

    image = ImageRGB.from_unit(np.full((2, 3, 3), 1.5))

    assert image.get_width() == 3
    assert image.get_height() == 2
    assert np.all(image.get_pixels() == 255)
