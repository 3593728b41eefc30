import numpy as np
import pytest

from fbptf.errors import DecompositionError, RejectedInputError
from fbptf.numerics.linalg import cholesky
from fbptf.numerics.random import RngStream, sample_mvn, sample_wishart


def test_streams_are_reproducible():

    first = RngStream(7).derive("sweep", 3).derive("U", 11)
    second = RngStream(7).derive("sweep", 3).derive("U", 11)

    assert first == second
    assert np.array_equal(first.generator().standard_normal(5), second.generator().standard_normal(5))


def test_streams_differ_by_path_and_seed():

    root = RngStream(7)

    draws = {
        stream: stream.generator().standard_normal()
        for stream in (root, root.derive("U", 0), root.derive("U", 1), root.derive("V", 0), RngStream(8))
    }

    assert len(set(draws.values())) == len(draws)


def test_seed_must_be_unsigned():

    with pytest.raises(RejectedInputError):
        RngStream(-1)


def test_mvn_with_vanishing_variance():

    draw = sample_mvn(np.array([1.0, 2.0]), 1e8 * np.eye(2), RngStream(0))

    assert np.allclose(draw, [1.0, 2.0], atol=1e-3)


def test_mvn_is_deterministic():

    mean = np.array([0.5, -1.0])
    precision = np.array([[2.0, 0.3], [0.3, 1.0]])

    assert np.array_equal(
        sample_mvn(mean, precision, RngStream(5)),
        sample_mvn(mean, precision, RngStream(5)),
    )


def test_mvn_covariance():

    draws = sample_mvn(np.zeros(2), 2.0 * np.eye(2), RngStream(11), count=100000)

    covariance = np.cov(draws.T)

    assert np.allclose(np.diag(covariance), 0.5, rtol=0.05)
    assert abs(covariance[0, 1]) < 0.025


def test_mvn_rejects_indefinite_precision():

    with pytest.raises(DecompositionError):
        sample_mvn(np.zeros(2), np.array([[1.0, 0.0], [0.0, -1.0]]), RngStream(0))


def test_wishart_one_dimensional_mean():

    draws = [sample_wishart(np.eye(1), 1.0, RngStream(3).derive("draw", index))[0, 0] for index in range(20000)]

    assert np.mean(draws) == pytest.approx(1.0, rel=0.05)


def test_wishart_mean():

    draws = np.array([sample_wishart(np.eye(3), 10.0, RngStream(4).derive("draw", index)) for index in range(5000)])

    assert np.allclose(np.diag(draws.mean(axis=0)), 10.0, rtol=0.05)


def test_wishart_draws_are_positive_definite():

    scale = np.array([[2.0, 0.5], [0.5, 1.0]])

    for index in range(20):
        cholesky(sample_wishart(scale, 2.0, RngStream(9).derive("draw", index)))


def test_wishart_rejects_low_degrees_of_freedom():

    with pytest.raises(RejectedInputError):
        sample_wishart(np.eye(3), 2.0, RngStream(0))
