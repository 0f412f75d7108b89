"""Neighbor and era tag-group reports over the classification results"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from ..configuration import config
from ..corpus_ingest.records import FilmRecord
from ..feature_matrix.tgfiff import GroupFrequencyMatrix
from ..oneclass_knn.types import ClassificationResult
from ..tag_normalize.matrix_builder import FilmTagMatrix


@dataclass
class NeighborRow:
    """One accepted film next to its nearest reference film"""
    item_id: int
    title: str
    year: Optional[int]
    neighbor_id: int
    neighbor_title: str
    neighbor_year: Optional[int]
    noir_tag: int

    def as_row(self) -> List:
        return [self.item_id, self.title, _year(self.year), self.neighbor_id,
                self.neighbor_title, _year(self.neighbor_year), self.noir_tag]


def _year(year: Optional[int]) -> str:
    return "" if year is None else str(year)


def indicator_tag_ids(gamma: FilmTagMatrix, stem_keys: Iterable[Optional[str]]) -> Set[int]:
    """Retained tag ids of the given stems; stems that did not survive are ignored"""
    ids = set()
    for key in stem_keys:
        if key is None:
            continue
        tag_id = gamma.tag_id(key)
        if tag_id is not None:
            ids.add(tag_id)
    return ids


def report_neighbors(results: Sequence[ClassificationResult], films: Mapping[int, FilmRecord],
                     gamma: FilmTagMatrix, indicator_ids: Set[int]) -> List[NeighborRow]:
    """
    Table of accepted films with their first nearest neighbor

    Args:
        results: Classification results
        films: FilmRecord by item id
        gamma: Film-tag matrix, for the noir-tag indicator
        indicator_ids: Tag ids whose presence sets the indicator to 1

    Returns:
        Rows ordered by item id
    """
    rows = []
    for result in sorted(results, key=lambda r: r.item_id):
        if not result.accepted:
            continue
        film = films[result.item_id]
        neighbor = films[result.neighbor_ids[0]]
        carries = bool(indicator_ids.intersection(gamma.tags_of(result.item_id)))
        rows.append(NeighborRow(
            item_id=film.item_id,
            title=film.title,
            year=film.year,
            neighbor_id=neighbor.item_id,
            neighbor_title=neighbor.title,
            neighbor_year=neighbor.year,
            noir_tag=int(carries),
        ))
    logging.info(f"Neighbor report: {len(rows)} accepted films, "
                 f"{sum(r.noir_tag for r in rows)} carry a noir tag")
    return rows


@dataclass
class EraReport:
    """Most frequent tag groups before and after the cutoff year"""
    cutoff: int
    top_k: int
    early: List[Tuple[str, int]] = field(default_factory=list)
    late: List[Tuple[str, int]] = field(default_factory=list)
    late_exclusive: List[Tuple[str, int]] = field(default_factory=list)
    early_films: int = 0
    late_films: int = 0
    unknown_year_films: int = 0

    def to_dict(self) -> Dict:
        def ranked(entries):
            return [{'rank': k + 1, 'group': label, 'frequency': freq} for k, (label, freq) in enumerate(entries)]

        return {
            'cutoff': self.cutoff,
            'top_k': self.top_k,
            'early_films': self.early_films,
            'late_films': self.late_films,
            'unknown_year_films': self.unknown_year_films,
            'early': ranked(self.early),
            'late': ranked(self.late),
            'late_exclusive': ranked(self.late_exclusive),
        }


def _ranked(frequency: np.ndarray, labels: Sequence[str], candidates: np.ndarray, top_k: int) -> List[Tuple[str, int]]:
    chosen = [int(m) for m in candidates if frequency[m] > 0]
    chosen.sort(key=lambda m: (-int(frequency[m]), m))
    return [(labels[m], int(frequency[m])) for m in chosen[:top_k]]


def era_frequencies(lam: GroupFrequencyMatrix, item_ids: Sequence[int]) -> np.ndarray:
    """Σ λ per group over the given films"""
    if len(item_ids) == 0:
        return np.zeros(lam.n_groups, dtype=np.int64)
    row_of = {int(item_id): row for row, item_id in enumerate(lam.item_ids)}
    rows = [row_of[int(item_id)] for item_id in item_ids]
    return np.asarray(lam.frequency[rows].sum(axis=0)).ravel().astype(np.int64)


def report_era_groups(results: Sequence[ClassificationResult], non_noise: Sequence[int],
                      films: Mapping[int, FilmRecord], lam: GroupFrequencyMatrix,
                      group_labels: Sequence[str], cutoff: int = config.ERA_CUTOFF,
                      top_k: int = config.TOP_K) -> EraReport:
    """
    Compare tag-group frequencies of early and late films

    The population is the reference set plus every accepted film; each film
    belongs to the era of its own year, films without a year are counted
    but left out of both eras.
    """
    population = sorted({int(i) for i in non_noise} | {r.item_id for r in results if r.accepted})
    early = [i for i in population if films[i].year is not None and films[i].year < cutoff]
    late = [i for i in population if films[i].year is not None and films[i].year >= cutoff]
    unknown = len(population) - len(early) - len(late)

    early_frequency = era_frequencies(lam, early)
    late_frequency = era_frequencies(lam, late)
    every_group = np.arange(lam.n_groups)

    report = EraReport(
        cutoff=cutoff,
        top_k=top_k,
        early=_ranked(early_frequency, group_labels, every_group, top_k),
        late=_ranked(late_frequency, group_labels, every_group, top_k),
        late_exclusive=_ranked(late_frequency, group_labels, np.flatnonzero(early_frequency == 0), top_k),
        early_films=len(early),
        late_films=len(late),
        unknown_year_films=unknown,
    )
    logging.info(f"Era report: {len(early)} films before {cutoff}, {len(late)} from {cutoff}, "
                 f"{unknown} without a year")
    return report
