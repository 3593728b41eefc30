import dataclasses

import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.synthetic import SyntheticConfig, generate
from fbptf.synthetic.generator import nonlinear_term


def test_default_shapes():

    dataset = generate(SyntheticConfig())

    assert dataset.get_A().shape == (3, 1000)
    assert dataset.get_F().shape == (50, 1000)
    assert dataset.get_A_prime().shape == (3, 1000, 4)
    assert np.all((dataset.get_A() >= 0.0) & (dataset.get_A() <= 1.0))
    assert np.all(np.isfinite(dataset.get_A_prime()))


def test_regeneration_is_bitwise_identical():

    first = generate(SyntheticConfig(n=50, seed=42))
    second = generate(SyntheticConfig(n=50, seed=42))

    assert first.get_A().tobytes() == second.get_A().tobytes()
    assert first.get_F().tobytes() == second.get_F().tobytes()
    assert first.get_A_prime().tobytes() == second.get_A_prime().tobytes()
    assert not np.array_equal(first.get_A(), generate(SyntheticConfig(n=50, seed=43)).get_A())


def test_pure_feature_term_repeats_across_versions():

    dataset = generate(SyntheticConfig(n=20, l=8, eta=0.0))

    expected = np.linalg.norm(dataset.get_F(), axis=0) / np.sqrt(8)

    for k in range(3):
        for m in range(4):
            assert np.allclose(dataset.get_A_prime()[k, :, m], expected)


def test_pure_parameter_term_ignores_features():

    config = SyntheticConfig(n=30, eta=1.0)
    dataset = generate(config)

    r1, r2, r3 = dataset.get_version_coefficients()[1, 2]

    assert np.allclose(dataset.get_A_prime()[1, :, 2], nonlinear_term(dataset.get_A(), r1, r2, r3))
    assert np.array_equal(
        dataset.get_A_prime(),
        generate(dataclasses.replace(config, l=7)).get_A_prime(),
    )


def test_features_follow_their_coefficients():

    dataset = generate(SyntheticConfig(n=10, l=5))

    for row, coefficients in enumerate(dataset.get_feature_coefficients()):
        assert np.allclose(dataset.get_F()[row], nonlinear_term(dataset.get_A(), *coefficients))


def test_features_increase_with_first_parameter():

    generator = np.random.default_rng(0)
    A = generator.uniform(size=(3, 100))
    bumped = A.copy()
    bumped[0] += 0.1

    assert np.all(nonlinear_term(bumped, 1.5, 0.7, 2.0) > nonlinear_term(A, 1.5, 0.7, 2.0))


def test_coefficients_are_drawn_within_ranges():

    dataset = generate(SyntheticConfig(n=5))
    table = dataset.get_feature_coefficients()

    assert np.all((table[:, 0] >= 0.5) & (table[:, 0] <= 2.0))
    assert np.all((table[:, 1] >= -3.0) & (table[:, 1] <= 3.0))
    assert np.all((table[:, 2] >= 0.5) & (table[:, 2] <= 3.0))


@pytest.mark.parametrize("overrides", [
    dict(k=4),
    dict(eta=1.5),
    dict(r2_range=(3.0, -3.0)),
    dict(r1_range=(0.0, 1.0)),
    dict(n=0),
])
def test_invalid_configs_are_rejected(overrides):

    with pytest.raises(RejectedInputError):
        SyntheticConfig(**overrides)
