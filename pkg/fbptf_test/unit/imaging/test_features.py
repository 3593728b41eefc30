import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.imaging import FeatureConfig, ImageRGB, extract_features, measure_params
from fbptf_test.functional.image_generation import generate_image, uniform_image


def test_default_feature_length():

    assert FeatureConfig().get_length() == 1709

    features = extract_features(generate_image(width=30, height=24))

    assert features.shape == (1709,)
    assert np.all(np.isfinite(features))
    assert features[:1274].sum() == pytest.approx(1.0)


def test_trailing_entries_are_global_params():

    image = generate_image(seed=4)

    assert extract_features(image)[-3:] == pytest.approx(measure_params(image).as_array())


def test_extraction_is_deterministic():

    image = generate_image(seed=2)
    copy = ImageRGB(image.get_pixels().copy())

    assert np.array_equal(extract_features(image), extract_features(copy))


def test_uniform_image_occupies_one_bin():

    cfg = FeatureConfig(hue_bins=4, sat_bins=2, val_bins=2, grid_rows=2, grid_cols=2)

    features = extract_features(uniform_image(255, width=4, height=4), cfg)

    assert features.shape == (cfg.get_length(),)
    assert features[:16].tolist() == [0.0, 1.0] + [0.0] * 14
    assert features[16:20].tolist() == [1.0] * 4
    assert features[20:24].tolist() == [0.0] * 4


def test_grid_cells_are_row_major():

    pixels = np.zeros((4, 4, 3), dtype=np.uint8)
    pixels[:2, 2:] = 255
    cfg = FeatureConfig(hue_bins=1, sat_bins=1, val_bins=1, grid_rows=2, grid_cols=2)

    features = extract_features(ImageRGB(pixels), cfg)

    assert features[1:5].tolist() == [0.0, 1.0, 0.0, 0.0]


def test_small_images_are_rejected():

    with pytest.raises(RejectedInputError):
        extract_features(uniform_image(10, width=8, height=8))
