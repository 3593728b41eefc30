import numpy as np
import pytest

from fbptf.errors import RejectedInputError
from fbptf.synthetic import split_folds


def test_folds_partition_indices():

    folds = split_folds(9, folds=3, seed=1)

    tests = [test for _, test in folds]

    assert [len(test) for test in tests] == [3, 3, 3]
    assert sorted(np.concatenate(tests).tolist()) == list(range(9))

    for train, test in folds:
        assert not set(train.tolist()) & set(test.tolist())
        assert len(train) + len(test) == 9


def test_remainder_goes_to_leading_folds():

    assert [len(test) for _, test in split_folds(10, folds=3)] == [4, 3, 3]


def test_same_seed_gives_same_split():

    first = split_folds(20, folds=4, seed=5)
    second = split_folds(20, folds=4, seed=5)

    for (train_a, test_a), (train_b, test_b) in zip(first, second):
        assert np.array_equal(train_a, train_b)
        assert np.array_equal(test_a, test_b)


@pytest.mark.parametrize("count, folds", [(5, 1), (3, 4)])
def test_invalid_fold_counts(count, folds):

    with pytest.raises(RejectedInputError):
        split_folds(count, folds=folds)
