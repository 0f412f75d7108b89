"""Frequency filtering, stoplists, and the binary film-tag matrix"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Sequence, Set

import numpy as np
import scipy.sparse as sp

from ..configuration import config
from ..corpus_ingest.records import TagApplication
from ..utils.error_handling import DataError
from ..utils.performance_profiler import profile_timing
from .stoplists import Stoplists
from .tag_normalizer import StemLexicon


@dataclass
class FilmTagMatrix:
    """
    Sparse binary film x tag incidence (Γ)

    Rows follow `item_ids` (ascending), columns follow `stems` (ascending),
    so a tag id is the rank of its stem key.
    """
    incidence: sp.csr_matrix
    item_ids: np.ndarray
    stems: List[str]
    labels: List[str]
    tag_user_count: np.ndarray
    tag_film_count: np.ndarray
    _row_index: Dict[int, int] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.incidence = sp.csr_matrix(self.incidence, dtype=np.int64)
        self.incidence.sort_indices()
        self._row_index = {int(item_id): row for row, item_id in enumerate(self.item_ids)}

    @property
    def n_films(self) -> int:
        return self.incidence.shape[0]

    @property
    def n_tags(self) -> int:
        return self.incidence.shape[1]

    @property
    def tag_counts(self) -> np.ndarray:
        """Distinct retained stems per film"""
        return np.asarray(self.incidence.sum(axis=1)).ravel()

    def row_of(self, item_id: int) -> int:
        return self._row_index[int(item_id)]

    def has_item(self, item_id: int) -> bool:
        return int(item_id) in self._row_index

    def tags_of(self, item_id: int) -> List[int]:
        row = self.row_of(item_id)
        start, end = self.incidence.indptr[row], self.incidence.indptr[row + 1]
        return [int(t) for t in self.incidence.indices[start:end]]

    def tag_id(self, stem_key: str) -> Optional[int]:
        position = int(np.searchsorted(self.stems, stem_key))
        if position < len(self.stems) and self.stems[position] == stem_key:
            return position
        return None


@dataclass
class FilterReport:
    """What the frequency filters and stoplists removed"""
    stems_seen: int = 0
    failing_users: int = 0
    failing_films: int = 0
    stems_before_stoplists: int = 0
    stoplisted_person_names: int = 0
    stoplisted_no_information: int = 0
    stems_retained: int = 0
    films_seen: int = 0
    films_dropped: int = 0
    films_retained: int = 0
    space_variant_merges: int = 0
    empty_after_cleaning: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)


@profile_timing("build_matrix", "tag_normalize", "stage")
def build_matrix(tag_apps: Sequence[TagApplication], lexicon: StemLexicon,
                 min_users: int = config.MIN_USERS, min_films: int = config.MIN_FILMS,
                 stoplists: Optional[Stoplists] = None,
                 report: Optional[FilterReport] = None) -> FilmTagMatrix:
    """
    Filter stems and assemble Γ

    Thresholds are evaluated once on the unfiltered counts and applied
    together with the stoplists, so the removal order does not matter.

    Args:
        tag_apps: Applications on retained films
        lexicon: Finalized lexicon (space variants merged)
        min_users: A stem needs strictly more distinct users than this
        min_films: A stem needs strictly more distinct films than this
        stoplists: Person-name and no-information entries
        report: Filled with removal counts when given

    Returns:
        FilmTagMatrix
    """
    report = report if report is not None else FilterReport()
    stoplists = stoplists or Stoplists()

    users_of: Dict[str, Set[int]] = defaultdict(set)
    films_of: Dict[str, Set[int]] = defaultdict(set)
    for app in tag_apps:
        key = lexicon.stem_for_raw(app.raw_tag)
        if key is None:
            continue
        users_of[key].add(app.user_id)
        films_of[key].add(app.item_id)

    report.stems_seen = len(users_of)
    report.films_seen = len({app.item_id for app in tag_apps})
    report.space_variant_merges = lexicon.merge_count
    report.empty_after_cleaning = lexicon.dropped_empty

    failing_users = {k for k in users_of if len(users_of[k]) <= min_users}
    failing_films = {k for k in films_of if len(films_of[k]) <= min_films}
    frequent = set(users_of) - failing_users - failing_films
    report.failing_users = len(failing_users)
    report.failing_films = len(failing_films)
    report.stems_before_stoplists = len(frequent)

    person = stoplists.person_name_keys(lexicon) & frequent
    no_information = (stoplists.no_information_keys(lexicon) & frequent) - person
    report.stoplisted_person_names = len(person)
    report.stoplisted_no_information = len(no_information)

    retained = sorted(frequent - person - no_information)
    report.stems_retained = len(retained)
    logging.info(
        f"Stems: {report.stems_seen} seen, {report.failing_users} with too few users, "
        f"{report.failing_films} on too few films, {report.stems_before_stoplists} before stoplists, "
        f"{len(person)} person names and {len(no_information)} no-information removed, "
        f"{len(retained)} retained"
    )
    if not retained:
        raise DataError(
            f"No tag survives filtering (min_users={min_users}, min_films={min_films}, "
            f"{report.stems_seen} stems seen)"
        )

    column_of = {key: position for position, key in enumerate(retained)}
    pairs = set()
    for app in tag_apps:
        key = lexicon.stem_for_raw(app.raw_tag)
        if key in column_of:
            pairs.add((app.item_id, column_of[key]))

    item_ids = np.array(sorted({item_id for item_id, _ in pairs}), dtype=np.int64)
    row_of = {int(item_id): row for row, item_id in enumerate(item_ids)}
    rows = np.array([row_of[item_id] for item_id, _ in pairs], dtype=np.int64)
    cols = np.array([column for _, column in pairs], dtype=np.int64)
    incidence = sp.csr_matrix(
        (np.ones(len(pairs), dtype=np.int64), (rows, cols)),
        shape=(len(item_ids), len(retained)),
    )

    report.films_retained = len(item_ids)
    report.films_dropped = report.films_seen - len(item_ids)
    logging.info(f"Film-tag matrix: N={len(item_ids)} films, L={len(retained)} tags "
                 f"({report.films_dropped} films left without tags)")

    return FilmTagMatrix(
        incidence=incidence,
        item_ids=item_ids,
        stems=retained,
        labels=[lexicon.label_of[key] for key in retained],
        tag_user_count=np.array([len(users_of[key]) for key in retained], dtype=np.int64),
        tag_film_count=np.array([len(films_of[key]) for key in retained], dtype=np.int64),
    )
