"""
Cross-validated threshold selection.

Each repetition splits T into stratified folds, classifies every fold
against the non-noise films of the other folds, and records the candidate
with the best √(TPR·TNR). The most frequent per-repetition winner is chosen.
A second, finer grid around the first winner refines the choice.
"""

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.model_selection import StratifiedKFold

from ..configuration import config
from ..feature_matrix.tgfiff import FeatureMatrix
from ..utils.error_handling import DataError, require
from ..utils.performance_profiler import profile_timing
from .classifier import ReferenceSet
from .types import ThresholdVector, TrainingPartition, is_sentinel


def score(tpr, tnr):
    """Geometric mean of the true-positive and true-negative rates"""
    tpr = np.asarray(tpr, dtype=np.float64)
    tnr = np.asarray(tnr, dtype=np.float64)
    require(bool(np.all((tpr >= 0) & (tpr <= 1))), "TPR outside [0, 1]")
    require(bool(np.all((tnr >= 0) & (tnr <= 1))), "TNR outside [0, 1]")
    result = np.sqrt(tpr * tnr)
    return float(result) if result.ndim == 0 else result


def _grid_values(start: float, stop: float, step: float) -> List[float]:
    count = int(round((stop - start) / step))
    return [round(start + k * step, 2) for k in range(count + 1)]


def _candidates(ratios: Sequence[float], distance_values: Sequence[float],
                neighbor_count: int) -> List[ThresholdVector]:
    grid = [
        ThresholdVector(ratio, *bounds)
        for ratio in ratios
        for bounds in itertools.combinations_with_replacement(sorted(set(distance_values)), neighbor_count)
    ]
    return sorted(grid)


def stage_one_grid(neighbor_count: int = config.NEIGHBOR_COUNT) -> List[ThresholdVector]:
    """Coarse grid: ratio 0.80..1.50 by 0.05, nondecreasing bounds over 0.25..0.55 by 0.05"""
    return _candidates(_grid_values(*config.RATIO_GRID), _grid_values(*config.DISTANCE_GRID), neighbor_count)


def stage_two_grid(winner: ThresholdVector, half_width: float = config.REFINE_HALF_WIDTH,
                   step: float = config.REFINE_STEP) -> List[ThresholdVector]:
    """
    Fine grid around a coarse winner

    Ratio bounds span the winner's ratio ± half_width; distance bounds span
    the winner's smallest bound - half_width to its largest + half_width,
    clipped to (0, 0.5], with the sentinel kept when the winner used it.
    """
    steps = int(round(half_width / step))
    ratios = [round(winner.ratio + k * step, 2) for k in range(-steps, steps + 1)]
    ratios = [r for r in ratios if r > 0]

    low = min(winner.distances) - half_width
    count = int(round((max(winner.distances) + half_width - low) / step))
    distance_values = [round(low + k * step, 2) for k in range(count + 1)]
    distance_values = [d for d in distance_values if 0 < d <= config.MAX_DISTANCE]
    if any(is_sentinel(d) for d in winner.distances):
        distance_values.append(config.DISTANCE_SENTINEL)
    return _candidates(ratios, distance_values, winner.neighbor_count)


@dataclass
class CvConfig:
    """Cross-validation settings"""
    neighbors: int = config.NEIGHBOR_COUNT
    folds: int = config.FOLD_COUNT
    repetitions: int = config.REPETITIONS
    seed: int = config.DEFAULT_SEED
    grid: Optional[List[ThresholdVector]] = None
    refine: bool = True
    workers: int = 1
    max_resample_attempts: int = config.MAX_RESAMPLE_ATTEMPTS

    def __post_init__(self):
        require(self.folds >= 2, "cross-validation needs at least 2 folds")
        require(self.repetitions >= 1, "cross-validation needs at least one repetition")
        if self.grid is not None:
            require(len(self.grid) > 0, "candidate grid is empty")
            for candidate in self.grid:
                candidate.validate()
                require(candidate.neighbor_count == self.neighbors,
                        f"candidate {candidate} does not have {self.neighbors} distance bounds")

    @property
    def uses_default_grid(self) -> bool:
        return self.grid is None


@dataclass
class StageOutcome:
    """Votes and winners of one grid stage"""
    name: str
    candidate_count: int
    winners: List[ThresholdVector]
    best_scores: List[float]
    resampled: int
    chosen: ThresholdVector

    @property
    def votes(self) -> Dict[ThresholdVector, int]:
        return dict(Counter(self.winners))

    def to_dict(self) -> Dict:
        histogram = sorted(self.votes.items(), key=lambda item: (-item[1], item[0]))
        return {
            'stage': self.name,
            'candidates': self.candidate_count,
            'chosen': list(self.chosen.as_tuple()),
            'resampled_repetitions': self.resampled,
            'votes': [{'theta': list(theta.as_tuple()), 'count': count} for theta, count in histogram],
            'repetitions': [
                {'repetition': k, 'winner': list(theta.as_tuple()), 'score': best}
                for k, (theta, best) in enumerate(zip(self.winners, self.best_scores))
            ],
        }


@dataclass
class ThresholdSelection:
    """Full record of a threshold selection run"""
    seed: int
    folds: int
    repetitions: int
    neighbors: int
    training_size: int
    non_noise_size: int
    noise_size: int
    stages: List[StageOutcome] = field(default_factory=list)

    @property
    def chosen(self) -> ThresholdVector:
        return self.stages[-1].chosen

    def to_dict(self) -> Dict:
        return {
            'chosen': list(self.chosen.as_tuple()),
            'seed': self.seed,
            'folds': self.folds,
            'repetitions': self.repetitions,
            'neighbors': self.neighbors,
            'training_size': self.training_size,
            'non_noise_size': self.non_noise_size,
            'noise_size': self.noise_size,
            'stages': [stage.to_dict() for stage in self.stages],
        }


@dataclass
class _FoldData:
    """Dense training vectors and labels shipped to worker processes"""
    item_ids: np.ndarray
    vectors: np.ndarray
    positive: np.ndarray


def _fold_seed(seed: int, stage: int, repetition: int, attempt: int) -> int:
    return int(np.random.SeedSequence([seed, stage, repetition, attempt]).generate_state(1)[0])


def _score_candidates(data: _FoldData, bounds: np.ndarray, neighbor_count: int, folds: int,
                      random_state: int) -> Optional[np.ndarray]:
    """Scores of every candidate for one fold split, or None when the split is unusable"""
    labels = data.positive.astype(np.int64)
    splitter = StratifiedKFold(n_splits=folds, shuffle=True, random_state=random_state)
    true_positive = np.zeros(len(bounds), dtype=np.int64)
    true_negative = np.zeros(len(bounds), dtype=np.int64)

    for train_index, test_index in splitter.split(np.zeros(len(labels)), labels):
        test_labels = data.positive[test_index]
        if test_labels.all() or not test_labels.any():
            return None
        reference_index = train_index[data.positive[train_index]]
        if len(reference_index) < neighbor_count + 1:
            return None

        reference = ReferenceSet(data.item_ids[reference_index], data.vectors[reference_index], neighbor_count)
        positions, distances = reference.nearest(reference.distances_to(data.vectors[test_index]))
        ratios = reference.ratios(positions, distances)

        accepted = (
            (ratios[None, :] < bounds[:, :1])
            & np.all(distances[None, :, :] < bounds[:, None, 1:], axis=2)
            & (distances[:, 0] < config.MAX_DISTANCE)[None, :]
        )
        true_positive += accepted[:, test_labels].sum(axis=1)
        true_negative += (~accepted[:, ~test_labels]).sum(axis=1)

    tpr = true_positive / data.positive.sum()
    tnr = true_negative / (~data.positive).sum()
    return score(tpr, tnr)


def _run_repetition(job) -> Tuple[int, float, int]:
    """(winner index, best score, resample attempts used) for one repetition"""
    data, bounds, neighbor_count, folds, seed, stage, repetition, max_attempts = job
    for attempt in range(max_attempts):
        scores = _score_candidates(data, bounds, neighbor_count, folds,
                                   _fold_seed(seed, stage, repetition, attempt))
        if scores is not None:
            winner = int(np.argmax(scores))
            return winner, float(scores[winner]), attempt
    raise DataError(f"Repetition {repetition} found no usable fold split in {max_attempts} attempts")


class ThresholdSelector:
    """Runs the cross-validated grid search over a training partition"""

    def __init__(self, cv_config: Optional[CvConfig] = None):
        self.cv_config = cv_config or CvConfig()
        self.logger = logging.getLogger(__name__)

    @profile_timing("select_threshold", "oneclass_knn", "stage")
    def run(self, partition: TrainingPartition, features: FeatureMatrix) -> ThresholdSelection:
        """
        Select θ for a training partition

        Args:
            partition: Noise split of T
            features: Feature matrix holding every film of T

        Returns:
            ThresholdSelection with the chosen vector and the vote record
        """
        cfg = self.cv_config
        positives = len(partition.non_noise)
        negatives = len(partition.noise)
        if positives < cfg.folds or negatives < cfg.folds:
            raise DataError(
                f"Cross-validation with {cfg.folds} folds needs at least {cfg.folds} non-noise and "
                f"{cfg.folds} noise films, got {positives} and {negatives}"
            )

        rows = features.rows_of(partition.training_set)
        data = _FoldData(
            item_ids=partition.training_set.copy(),
            vectors=features.unit[rows].toarray(),
            positive=np.isin(partition.training_set, partition.non_noise),
        )

        selection = ThresholdSelection(
            seed=cfg.seed, folds=cfg.folds, repetitions=cfg.repetitions, neighbors=cfg.neighbors,
            training_size=len(partition.training_set), non_noise_size=positives, noise_size=negatives,
        )

        grid = cfg.grid if cfg.grid is not None else stage_one_grid(cfg.neighbors)
        first = self._run_stage("coarse", 0, sorted(grid), data)
        selection.stages.append(first)

        if cfg.refine and cfg.uses_default_grid:
            second = self._run_stage("fine", 1, stage_two_grid(first.chosen), data)
            selection.stages.append(second)

        self.logger.info(f"Selected threshold vector {selection.chosen}")
        return selection

    def _run_stage(self, name: str, stage: int, grid: List[ThresholdVector], data: _FoldData) -> StageOutcome:
        cfg = self.cv_config
        bounds = np.array([candidate.as_tuple() for candidate in grid], dtype=np.float64)
        jobs = [
            (data, bounds, cfg.neighbors, cfg.folds, cfg.seed, stage, repetition, cfg.max_resample_attempts)
            for repetition in range(cfg.repetitions)
        ]
        if cfg.workers > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                outcomes = list(pool.map(_run_repetition, jobs))
        else:
            outcomes = [_run_repetition(job) for job in jobs]

        winners = [index for index, _, _ in outcomes]
        votes = np.bincount(winners, minlength=len(grid))
        # argmax takes the first maximum: the grid is sorted, so ties go to the smallest candidate
        chosen = grid[int(np.argmax(votes))]
        resampled = sum(1 for _, _, attempts in outcomes if attempts > 0)

        self.logger.info(
            f"Stage {name}: {len(grid)} candidates, {cfg.repetitions} repetitions, "
            f"winner {chosen} with {int(votes.max())} votes"
            + (f", {resampled} repetitions resampled" if resampled else "")
        )
        return StageOutcome(
            name=name,
            candidate_count=len(grid),
            winners=[grid[index] for index in winners],
            best_scores=[best for _, best, _ in outcomes],
            resampled=resampled,
            chosen=chosen,
        )


def select_threshold(partition: TrainingPartition, features: FeatureMatrix,
                     cv_config: Optional[CvConfig] = None) -> ThresholdVector:
    """Chosen threshold vector for a training partition"""
    return ThresholdSelector(cv_config).run(partition, features).chosen
