"""Unit tests for the center-distance noise split"""

import math

import numpy as np
import pytest

from packages.oneclass_knn import split_noise
from packages.utils.error_handling import DataError
from tests.fixtures.matrices import make_features


def direction(fraction):
    """2-d unit vector at `fraction` of π from the first axis"""
    return [math.cos(math.pi * fraction), math.sin(math.pi * fraction)]


class TestSplitNoise:
    def test_planted_outliers_and_low_tag_member(self):
        # six films along one direction, two far outliers; film 12 has too few tags
        vectors = [direction(0.10)] * 6 + [direction(0.40), direction(0.45)]
        item_ids = [10, 11, 12, 13, 14, 15, 16, 17]
        features = make_features(vectors, item_ids)
        tag_counts = [6, 6, 3, 6, 6, 6, 6, 6]

        partition = split_noise(features, item_ids, tag_counts, min_tags=5)

        assert partition.noise.tolist() == [12, 16, 17]
        assert partition.non_noise.tolist() == [10, 11, 13, 14, 15]
        assert partition.noise_reason == {12: "too_few_tags", 16: "distance", 17: "distance"}
        # center sits about 0.175 from the first axis
        assert partition.distance_of(10) == pytest.approx(0.0754, abs=1e-3)
        assert partition.q3 == pytest.approx(0.1127, abs=1e-3)
        assert np.linalg.norm(partition.center) == pytest.approx(1.0)

    def test_identical_vectors_have_no_distance_noise(self):
        features = make_features([[1.0, 2.0, 0.0]] * 4)
        partition = split_noise(features, [0, 1, 2, 3], [5, 5, 5, 5])
        assert partition.q3 == 0.0
        assert len(partition.noise) == 0
        assert partition.sizes == (4, 4, 0)

    def test_partition_covers_training_set(self, rng):
        dense = rng.random((40, 6)) * (rng.random((40, 6)) < 0.5)
        dense[:, 0] += 0.01
        features = make_features(dense)
        tag_counts = rng.integers(1, 10, 40)
        partition = split_noise(features, np.arange(40), tag_counts)

        assert sorted(partition.non_noise.tolist() + partition.noise.tolist()) == list(range(40))
        assert not set(partition.non_noise) & set(partition.noise)
        far = sum(1 for d in partition.center_distance.values() if d > partition.q3)
        assert far <= math.ceil(40 / 4)
        for item_id in partition.non_noise:
            assert tag_counts[item_id] >= 5
            assert partition.distance_of(item_id) <= partition.q3

    def test_training_ids_are_sorted(self):
        features = make_features([[1.0, 0.0]] * 4, [7, 3, 5, 1])
        partition = split_noise(features, [7, 3, 5, 1], [5, 5, 5, 5])
        assert partition.training_set.tolist() == [1, 3, 5, 7]

    def test_zero_vector_is_noise(self):
        features = make_features([[1.0, 0.0]] * 4 + [[0.0, 0.0]])
        partition = split_noise(features, [0, 1, 2, 3, 4], [5] * 5)
        assert partition.noise.tolist() == [4]
        assert partition.noise_reason[4] == "zero_vector"
        assert partition.distance_of(4) is None

    def test_too_small_training_set(self):
        features = make_features([[1.0, 0.0]] * 3)
        with pytest.raises(DataError, match="at least 4"):
            split_noise(features, [0, 1, 2], [5, 5, 5])

    def test_everything_is_noise(self):
        features = make_features([[1.0, 0.0]] * 4)
        with pytest.raises(DataError, match="noise"):
            split_noise(features, [0, 1, 2, 3], [1, 1, 1, 1])

    def test_all_zero_vectors(self):
        features = make_features([[0.0, 0.0]] * 4)
        with pytest.raises(DataError, match="all-zero"):
            split_noise(features, [0, 1, 2, 3], [5] * 4)
