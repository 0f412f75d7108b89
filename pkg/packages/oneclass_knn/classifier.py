"""
One-class nearest-neighbor acceptance rule.

A film z is accepted when the mean distance to its J nearest reference films,
divided by the mean distance of those films to their own nearest reference
films, stays below θ1 and each neighbor distance stays below its bound.
"""

import logging
import math
from collections import Counter
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..configuration import config
from ..feature_matrix.tgfiff import FeatureMatrix
from ..utils.error_handling import DataError, require
from ..utils.performance_profiler import profile_timing
from .distance import pairwise_angular
from .types import ClassificationResult, RejectionReason, ThresholdVector


def mean_ratio(numerator, denominator):
    """Ratio with 0/0 = 0 and x/0 = inf, elementwise"""
    numerator = np.asarray(numerator, dtype=np.float64)
    denominator = np.asarray(denominator, dtype=np.float64)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(denominator > 0, numerator / np.where(denominator > 0, denominator, 1.0),
                         np.where(numerator > 0, np.inf, 0.0))
    return float(ratio) if ratio.ndim == 0 else ratio


class ReferenceSet:
    """
    Non-noise reference films with their nearest-other-member distances

    Members are kept in ascending item id order, so stable sorting breaks
    distance ties toward the smaller item id.
    """

    def __init__(self, item_ids: Sequence[int], vectors, neighbor_count: int = config.NEIGHBOR_COUNT):
        """
        Args:
            item_ids: Reference film ids
            vectors: Unit rows aligned with item_ids (sparse or dense)
            neighbor_count: J
        """
        item_ids = np.asarray(item_ids, dtype=np.int64)
        if len(item_ids) < neighbor_count + 1:
            raise DataError(
                f"Reference set needs at least {neighbor_count + 1} films for "
                f"{neighbor_count} neighbors, got {len(item_ids)}"
            )
        order = np.argsort(item_ids, kind='stable')
        self.item_ids = item_ids[order]
        self.vectors = sp.csr_matrix(vectors)[order] if sp.issparse(vectors) else np.asarray(vectors)[order]
        self.neighbor_count = neighbor_count

        internal = pairwise_angular(self.vectors, self.vectors)
        np.fill_diagonal(internal, np.inf)
        self.self_distances = internal.min(axis=1)

    @classmethod
    def from_features(cls, features: FeatureMatrix, item_ids: Sequence[int],
                      neighbor_count: int = config.NEIGHBOR_COUNT) -> "ReferenceSet":
        rows = features.rows_of(item_ids)
        require(not bool(features.zero_rows[rows].any()), "reference films need nonzero vectors")
        return cls(item_ids, features.unit[rows], neighbor_count)

    def __len__(self) -> int:
        return len(self.item_ids)

    def distances_to(self, vectors) -> np.ndarray:
        """Distance from each row of `vectors` to every reference film"""
        if not sp.issparse(vectors):
            vectors = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
        return pairwise_angular(vectors, self.vectors)

    def nearest(self, distances: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        J nearest reference positions per row

        Returns:
            (positions, distances), both shaped (rows, J), ascending per row
        """
        distances = np.atleast_2d(distances)
        positions = np.argsort(distances, axis=1, kind='stable')[:, :self.neighbor_count]
        return positions, np.take_along_axis(distances, positions, axis=1)

    def ratios(self, positions: np.ndarray, nearest_distances: np.ndarray) -> np.ndarray:
        """r(z) for rows of neighbor positions and distances"""
        return mean_ratio(nearest_distances.mean(axis=1), self.self_distances[positions].mean(axis=1))


def neighbors(z, reference: ReferenceSet, neighbor_count: Optional[int] = None) -> List[Tuple[int, float]]:
    """J nearest (item id, distance) pairs for one unit vector, ascending"""
    require(neighbor_count in (None, reference.neighbor_count),
            "neighbor_count differs from the reference set's")
    positions, distances = reference.nearest(reference.distances_to(z))
    return [(int(reference.item_ids[p]), float(d)) for p, d in zip(positions[0], distances[0])]


def ratio(z, reference: ReferenceSet, neighbor_count: Optional[int] = None) -> float:
    """Mean distance to the neighbors over the neighbors' own mean nearest distance"""
    require(neighbor_count in (None, reference.neighbor_count),
            "neighbor_count differs from the reference set's")
    positions, distances = reference.nearest(reference.distances_to(z))
    return float(reference.ratios(positions, distances)[0])


def decide(tag_count: int, is_zero: bool, nearest_distances: Sequence[float], r: float,
           theta: ThresholdVector, min_tags: int = config.MIN_TAGS) -> RejectionReason:
    """Apply the rejection rules in their fixed order"""
    if tag_count < min_tags:
        return RejectionReason.TOO_FEW_TAGS
    if is_zero:
        return RejectionReason.ZERO_VECTOR
    if nearest_distances[0] >= config.MAX_DISTANCE:
        return RejectionReason.MAX_DISTANCE
    if not r < theta.ratio:
        return RejectionReason.RATIO_EXCEEDED
    if any(not d < bound for d, bound in zip(nearest_distances, theta.distances)):
        return RejectionReason.DISTANCE_EXCEEDED
    return RejectionReason.ACCEPTED


def _result(item_id: int, tag_count: int, reason: RejectionReason, reference: ReferenceSet,
            positions: Optional[np.ndarray], distances: Optional[np.ndarray], r: float) -> ClassificationResult:
    if positions is None:
        nearest, self_distances = (), ()
    else:
        nearest = tuple((int(reference.item_ids[p]), float(d)) for p, d in zip(positions, distances))
        self_distances = tuple(float(reference.self_distances[p]) for p in positions)
    return ClassificationResult(
        item_id=int(item_id),
        accepted=reason is RejectionReason.ACCEPTED,
        tag_count=int(tag_count),
        neighbors=nearest,
        neighbor_self_distances=self_distances,
        ratio=float(r),
        rejection_reason=reason,
    )


def classify(z, reference: ReferenceSet, theta: ThresholdVector, tag_count: int,
             min_tags: int = config.MIN_TAGS, item_id: int = -1) -> ClassificationResult:
    """
    Accept or reject one film

    Args:
        z: Unit feature vector, or an all-zero vector for films without direction
        reference: Reference set S
        theta: Threshold vector with J distance bounds
        tag_count: Distinct retained tags of the film
        min_tags: Minimum tags for acceptance
        item_id: Film id recorded in the result

    Returns:
        ClassificationResult
    """
    require(theta.neighbor_count == reference.neighbor_count,
            f"threshold vector has {theta.neighbor_count} distance bounds for {reference.neighbor_count} neighbors")
    vector = z.toarray().ravel() if sp.issparse(z) else np.asarray(z, dtype=np.float64).ravel()
    if not vector.any():
        reason = RejectionReason.TOO_FEW_TAGS if tag_count < min_tags else RejectionReason.ZERO_VECTOR
        return _result(item_id, tag_count, reason, reference, None, None, math.nan)

    positions, distances = reference.nearest(reference.distances_to(vector))
    r = float(reference.ratios(positions, distances)[0])
    reason = decide(tag_count, False, distances[0], r, theta, min_tags)
    return _result(item_id, tag_count, reason, reference, positions[0], distances[0], r)


@profile_timing("classify_all", "oneclass_knn", "stage")
def classify_all(features: FeatureMatrix, item_ids: Sequence[int], tag_counts: Sequence[int],
                 reference: ReferenceSet, theta: ThresholdVector,
                 min_tags: int = config.MIN_TAGS) -> List[ClassificationResult]:
    """Classify many films in one distance-matrix pass; results follow item_ids order"""
    require(theta.neighbor_count == reference.neighbor_count,
            f"threshold vector has {theta.neighbor_count} distance bounds for {reference.neighbor_count} neighbors")
    item_ids = np.asarray(item_ids, dtype=np.int64)
    if len(item_ids) == 0:
        return []
    rows = features.rows_of(item_ids)
    zero = features.zero_rows[rows]

    positions, distances = reference.nearest(reference.distances_to(features.unit[rows]))
    ratios = reference.ratios(positions, distances)

    results = []
    for k, (item_id, tag_count) in enumerate(zip(item_ids, tag_counts)):
        if zero[k]:
            reason = RejectionReason.TOO_FEW_TAGS if tag_count < min_tags else RejectionReason.ZERO_VECTOR
            results.append(_result(item_id, tag_count, reason, reference, None, None, math.nan))
            continue
        reason = decide(int(tag_count), False, distances[k], float(ratios[k]), theta, min_tags)
        results.append(_result(item_id, tag_count, reason, reference, positions[k], distances[k], ratios[k]))

    outcome = Counter(result.rejection_reason.value for result in results)
    logging.info(f"Classified {len(results)} films: " +
                 ", ".join(f"{reason}={count}" for reason, count in sorted(outcome.items())))
    return results
