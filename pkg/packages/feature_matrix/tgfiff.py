"""Tag-group frequencies, inverse film frequency and TgFIFF weights"""

import logging
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Union

import numpy as np
import scipy.sparse as sp
from sklearn.preprocessing import normalize

from ..tag_cluster.partitioner import TagGrouping
from ..tag_normalize.matrix_builder import FilmTagMatrix
from ..utils.error_handling import require
from ..utils.performance_profiler import profile_timing


@dataclass
class GroupFrequencyMatrix:
    """Λ = ΓΨ with the per-group film frequency FmF"""
    frequency: sp.csr_matrix
    item_ids: np.ndarray

    def __post_init__(self):
        self.frequency = sp.csr_matrix(self.frequency, dtype=np.int64)
        self.frequency.eliminate_zeros()
        self.frequency.sort_indices()

    @property
    def n_films(self) -> int:
        return self.frequency.shape[0]

    @property
    def n_groups(self) -> int:
        return self.frequency.shape[1]

    @property
    def film_frequency(self) -> np.ndarray:
        return np.diff(self.frequency.tocsc().indptr).astype(np.int64)


@dataclass
class FeatureMatrix:
    """TgFIFF weights Φ plus the unit-normalized rows used for distances"""
    weights: sp.csr_matrix
    item_ids: np.ndarray
    unit: sp.csr_matrix = field(init=False)
    norms: np.ndarray = field(init=False)
    zero_rows: np.ndarray = field(init=False)

    def __post_init__(self):
        self.weights = sp.csr_matrix(self.weights, dtype=np.float64)
        self.weights.eliminate_zeros()
        self.weights.sort_indices()
        self.unit, self.norms = unit_normalize(self.weights)
        self.zero_rows = self.norms == 0
        self._row_index = {int(item_id): row for row, item_id in enumerate(self.item_ids)}

    @property
    def n_films(self) -> int:
        return self.weights.shape[0]

    @property
    def n_groups(self) -> int:
        return self.weights.shape[1]

    def row_of(self, item_id: int) -> int:
        return self._row_index[int(item_id)]

    def rows_of(self, item_ids) -> np.ndarray:
        return np.array([self._row_index[int(i)] for i in item_ids], dtype=np.int64)


def group_frequency(gamma: FilmTagMatrix, grouping: TagGrouping) -> GroupFrequencyMatrix:
    """λ_nm = number of the film's tags that belong to group m"""
    require(grouping.n_tags == gamma.n_tags, "grouping does not cover the matrix tags")
    return GroupFrequencyMatrix(gamma.incidence @ grouping.psi(), gamma.item_ids.copy())


def ifmf(film_frequency: Union[int, np.ndarray], n_films: int) -> Union[float, np.ndarray]:
    """Natural log of N / FmF"""
    fmf = np.asarray(film_frequency, dtype=np.float64)
    require(bool(np.all(fmf >= 1)), "film frequency must be at least 1")
    require(bool(np.all(fmf <= n_films)), "film frequency cannot exceed the film count")
    weights = np.log(n_films / fmf)
    return float(weights) if weights.ndim == 0 else weights


def tgfiff(lam: GroupFrequencyMatrix, n_films: Optional[int] = None) -> FeatureMatrix:
    """φ_nm = λ_nm · ln(N / FmF(m))"""
    n_films = lam.n_films if n_films is None else n_films
    weights = ifmf(lam.film_frequency, n_films)
    scaled = lam.frequency.astype(np.float64) @ sp.diags(weights)
    return FeatureMatrix(sp.csr_matrix(scaled), lam.item_ids.copy())


def unit_normalize(phi: sp.spmatrix):
    """
    Divide every nonzero row by its Euclidean norm

    Returns:
        (unit rows, norms); zero rows stay zero and have norm 0
    """
    phi = sp.csr_matrix(phi, dtype=np.float64)
    norms = np.sqrt(np.asarray(phi.multiply(phi).sum(axis=1)).ravel())
    unit = normalize(phi, norm='l2', axis=1, copy=True)
    return sp.csr_matrix(unit), norms


@dataclass
class FeatureReport:
    """Groups that carry no weight and films left without a direction"""
    films: int = 0
    groups: int = 0
    uninformative_groups: List[int] = field(default_factory=list)
    zero_row_items: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return asdict(self)


@profile_timing("build_features", "feature_matrix", "stage")
def build_features(gamma: FilmTagMatrix, grouping: TagGrouping,
                   report: Optional[FeatureReport] = None):
    """
    Λ and Φ for the whole corpus

    Returns:
        (GroupFrequencyMatrix, FeatureMatrix)
    """
    lam = group_frequency(gamma, grouping)
    features = tgfiff(lam)

    report = report if report is not None else FeatureReport()
    report.films = lam.n_films
    report.groups = lam.n_groups
    report.uninformative_groups = [int(m) for m in np.flatnonzero(lam.film_frequency == lam.n_films)]
    report.zero_row_items = [int(i) for i in features.item_ids[features.zero_rows]]
    if report.uninformative_groups:
        logging.warning(f"{len(report.uninformative_groups)} tag groups occur in every film and get weight 0")
    if report.zero_row_items:
        logging.warning(f"{len(report.zero_row_items)} films have an all-zero feature vector")
    logging.info(f"Features: N={lam.n_films} films x M={lam.n_groups} groups, "
                 f"{features.weights.nnz} nonzero weights")
    return lam, features
