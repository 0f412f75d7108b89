"""One-class nearest-neighbor classification with noise filtering"""

from .types import ThresholdVector, RejectionReason, ClassificationResult, TrainingPartition
from .distance import angular_distance, angular_from_cosine, pairwise_angular
from .noise_split import split_noise
from .classifier import ReferenceSet, neighbors, ratio, classify, classify_all, decide, mean_ratio
from .threshold_selection import (
    CvConfig,
    ThresholdSelector,
    ThresholdSelection,
    StageOutcome,
    score,
    select_threshold,
    stage_one_grid,
    stage_two_grid,
)

__all__ = [
    'ThresholdVector',
    'RejectionReason',
    'ClassificationResult',
    'TrainingPartition',
    'angular_distance',
    'angular_from_cosine',
    'pairwise_angular',
    'split_noise',
    'ReferenceSet',
    'neighbors',
    'ratio',
    'classify',
    'classify_all',
    'decide',
    'mean_ratio',
    'CvConfig',
    'ThresholdSelector',
    'ThresholdSelection',
    'StageOutcome',
    'score',
    'select_threshold',
    'stage_one_grid',
    'stage_two_grid',
]
