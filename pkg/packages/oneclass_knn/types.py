"""Value types shared by the one-class nearest-neighbor classifier"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..configuration import config
from ..utils.error_handling import ContractViolation


def is_sentinel(value: float) -> bool:
    return math.isclose(value, config.DISTANCE_SENTINEL, abs_tol=1e-9)


@dataclass(frozen=True, order=True, init=False)
class ThresholdVector:
    """
    Acceptance bounds: `ratio` on r(z), `distances[j]` on d(z, NN_j)

    A distance bound equal to DISTANCE_SENTINEL means "no bound", since
    angular distances never exceed MAX_DISTANCE.
    """
    ratio: float
    distances: Tuple[float, ...]

    def __init__(self, ratio: float, *distances: float):
        if len(distances) == 1 and isinstance(distances[0], (tuple, list)):
            distances = tuple(distances[0])
        object.__setattr__(self, 'ratio', float(ratio))
        object.__setattr__(self, 'distances', tuple(float(d) for d in distances))
        self.validate()

    def validate(self):
        if not self.distances:
            raise ContractViolation("threshold vector needs at least one distance bound")
        if not self.ratio > 0:
            raise ContractViolation(f"ratio bound must be positive, got {self.ratio}")
        for bound in self.distances:
            if not (0 < bound <= config.MAX_DISTANCE or is_sentinel(bound)):
                raise ContractViolation(
                    f"distance bound {bound} outside (0, {config.MAX_DISTANCE}] "
                    f"and not the sentinel {config.DISTANCE_SENTINEL}"
                )
        if any(a > b for a, b in zip(self.distances, self.distances[1:])):
            raise ContractViolation(f"distance bounds must be nondecreasing: {self.distances}")

    @property
    def neighbor_count(self) -> int:
        return len(self.distances)

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.ratio,) + self.distances

    def __str__(self) -> str:
        return "(" + ", ".join(f"{v:g}" for v in self.as_tuple()) + ")"

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "ThresholdVector":
        values = list(values)
        return cls(values[0], *values[1:])


class RejectionReason(Enum):
    """Outcome of classifying one film, checked in declaration order after ACCEPTED"""
    ACCEPTED = "accepted"
    TOO_FEW_TAGS = "too_few_tags"
    ZERO_VECTOR = "zero_vector"
    MAX_DISTANCE = "max_distance"
    RATIO_EXCEEDED = "ratio_exceeded"
    DISTANCE_EXCEEDED = "distance_exceeded"


@dataclass(frozen=True)
class ClassificationResult:
    """Decision for one film with the evidence behind it"""
    item_id: int
    accepted: bool
    tag_count: int
    neighbors: Tuple[Tuple[int, float], ...]
    neighbor_self_distances: Tuple[float, ...]
    ratio: float
    rejection_reason: RejectionReason

    @property
    def neighbor_ids(self) -> List[int]:
        return [item_id for item_id, _ in self.neighbors]

    @property
    def neighbor_distances(self) -> List[float]:
        return [distance for _, distance in self.neighbors]


@dataclass
class TrainingPartition:
    """Positive-labeled films split into the reference set S and noise"""
    training_set: np.ndarray
    non_noise: np.ndarray
    noise: np.ndarray
    center: np.ndarray
    q3: float
    center_distance: Dict[int, float] = field(default_factory=dict)
    noise_reason: Dict[int, str] = field(default_factory=dict)

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return len(self.training_set), len(self.non_noise), len(self.noise)

    def is_noise(self, item_id: int) -> bool:
        return int(item_id) in self.noise_reason

    def distance_of(self, item_id: int) -> Optional[float]:
        return self.center_distance.get(int(item_id))
