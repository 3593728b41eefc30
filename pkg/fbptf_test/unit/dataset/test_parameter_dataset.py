import numpy as np
import pytest

from fbptf.dataset import ParameterDataset
from fbptf.dataset.identifier import default_identifiers, is_valid_identifier
from fbptf.errors import RejectedInputError
from fbptf.synthetic import SyntheticConfig, generate
from fbptf_test.functional.data_generation import generate_parameter_dataset


@pytest.mark.parametrize("identifier, valid", [
    ("img-0001", True),
    ("a_b", True),
    ("", False),
    ("with space", False),
    ("a:b", False),
    ("../up", False),
])
def test_identifier_validation(identifier, valid):

    assert is_valid_identifier(identifier) == valid


def test_default_identifiers_are_padded():

    assert default_identifiers(3) == ["00000", "00001", "00002"]
    assert default_identifiers(100001)[-1] == "100000"


def test_deltas_are_version_minus_input():

    dataset = generate_parameter_dataset(N=5, M=2)

    deltas = dataset.get_delta_values()

    assert deltas.shape == (5, 2, 3)
    assert deltas[3, 1, 2] == pytest.approx(dataset.get_A_prime()[2, 3, 1] - dataset.get_A()[2, 3])
    assert dataset.get_delta_tensor().get_observed_count() == 30


def test_subset_keeps_identifiers():

    dataset = generate_parameter_dataset(N=6)

    subset = dataset.subset([4, 1])

    assert subset.get_ids() == ["00004", "00001"]
    assert np.array_equal(subset.get_F()[:, 0], dataset.get_F()[:, 4])
    assert subset.get_N() == 2


def test_synthetic_provenance():

    dataset = ParameterDataset.from_synthetic(generate(SyntheticConfig(n=10, l=4, seed=9)))

    provenance = dataset.get_provenance()

    assert (dataset.get_K(), dataset.get_N(), dataset.get_M(), dataset.get_L()) == (3, 10, 4, 4)
    assert provenance["source"] == "synthetic"
    assert provenance["synthetic.seed"] == 9
    assert provenance["synthetic.norm_scale"] == pytest.approx(0.5)


def test_arrays_are_read_only():

    dataset = generate_parameter_dataset()

    with pytest.raises(ValueError):
        dataset.get_A()[0, 0] = 1.0


@pytest.mark.parametrize("A, A_prime, F, ids", [
    (np.ones((3, 4)), np.ones((3, 5, 2)), np.ones((2, 4)), None),
    (np.ones((3, 4)), np.ones((3, 4, 2)), np.ones((2, 3)), None),
    (np.ones((3, 4)), np.ones((3, 4, 2)), np.full((2, 4), np.nan), None),
    (np.ones((3, 2)), np.ones((3, 2, 2)), np.ones((2, 2)), ["a", "a"]),
    (np.ones((3, 2)), np.ones((3, 2, 2)), np.ones((2, 2)), ["a", "b c"]),
])
def test_invalid_datasets_are_rejected(A, A_prime, F, ids):

    with pytest.raises(RejectedInputError):
        ParameterDataset(A, A_prime, F, ids)
