"""Center-distance noise split of the positive-labeled training films"""

import logging
from typing import Sequence

import numpy as np

from ..configuration import config
from ..feature_matrix.tgfiff import FeatureMatrix
from ..utils.error_handling import DataError
from ..utils.performance_profiler import profile_timing
from .distance import angular_from_cosine
from .types import TrainingPartition


@profile_timing("split_noise", "oneclass_knn", "stage")
def split_noise(features: FeatureMatrix, training_ids: Sequence[int], tag_counts: Sequence[int],
                min_tags: int = config.MIN_TAGS) -> TrainingPartition:
    """
    Separate T into the reference set S and noise

    Noise is the union of members farther from the center than the third
    quartile of center distances and members with fewer than `min_tags`
    tags. Members with an all-zero vector have no direction and are noise.

    Args:
        features: Feature matrix holding every training film
        training_ids: Item ids of T
        tag_counts: Tag count per training film, aligned with training_ids
        min_tags: Minimum tags for a reference film

    Returns:
        TrainingPartition
    """
    order = np.argsort(np.asarray(training_ids, dtype=np.int64), kind='stable')
    training = np.asarray(training_ids, dtype=np.int64)[order]
    counts = np.asarray(tag_counts, dtype=np.int64)[order]
    if len(training) < 4:
        raise DataError(f"Training set needs at least 4 films, got {len(training)}")

    rows = features.rows_of(training)
    zero = features.zero_rows[rows]
    unit = features.unit[rows]

    center = np.asarray(unit.mean(axis=0)).ravel()
    center_norm = float(np.linalg.norm(center))
    if center_norm == 0:
        raise DataError("Every training film has an all-zero feature vector")
    center = center / center_norm

    distances = angular_from_cosine(np.asarray(unit @ center).ravel())
    distances = np.atleast_1d(distances)
    q3 = float(np.percentile(distances[~zero], 75))

    far = (distances > q3) & ~zero
    sparse_tags = counts < min_tags
    noise_mask = far | sparse_tags | zero

    noise_reason = {}
    for item_id, is_far, is_sparse, is_zero in zip(training, far, sparse_tags, zero):
        if is_zero:
            noise_reason[int(item_id)] = "zero_vector"
        elif is_far and is_sparse:
            noise_reason[int(item_id)] = "distance_and_too_few_tags"
        elif is_far:
            noise_reason[int(item_id)] = "distance"
        elif is_sparse:
            noise_reason[int(item_id)] = "too_few_tags"

    non_noise = training[~noise_mask]
    noise = training[noise_mask]
    if len(non_noise) == 0:
        raise DataError(f"All {len(training)} training films were classified as noise")

    logging.info(
        f"Noise split: |T|={len(training)}, |S|={len(non_noise)}, |noise|={len(noise)} "
        f"(q3={q3:.4f}; beyond q3: {int(far.sum())}, too few tags: {int(sparse_tags.sum())}, "
        f"zero vectors: {int(zero.sum())})"
    )
    return TrainingPartition(
        training_set=training,
        non_noise=non_noise,
        noise=noise,
        center=center,
        q3=q3,
        center_distance={int(i): float(d) for i, d, z in zip(training, distances, zero) if not z},
        noise_reason=noise_reason,
    )
