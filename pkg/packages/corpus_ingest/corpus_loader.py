"""
Corpus loading: reconcile MovieLens and IMDb identifiers and select the
narrative-film universe.
"""

import logging
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..configuration import config
from ..utils.performance_profiler import profile_timing
from .readers import BasicsReader, LinksReader, TagsReader
from .records import FilmRecord, IdOverrideTable, TagApplication, TitleType


@dataclass
class IngestReport:
    """Counts gathered while loading and filtering the corpus"""
    links_rows: int = 0
    tags_rows: int = 0
    basics_rows_matched: int = 0
    malformed_rows: Dict[str, int] = field(default_factory=dict)
    overrides_applied: int = 0
    exclusions: int = 0
    duplicates_merged: int = 0
    missing_from_basics: int = 0
    films_loaded: int = 0
    applications_loaded: int = 0
    applications_unknown_film: int = 0
    removed_title_type: int = 0
    removed_documentary: int = 0
    films_retained: int = 0
    applications_dropped: int = 0
    applications_retained: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)


class CorpusLoader:
    """Loads links, tags and basics into FilmRecords and TagApplications"""

    def __init__(self, overrides: Optional[IdOverrideTable] = None, workers: int = 2):
        self.overrides = overrides or IdOverrideTable()
        self.workers = max(1, workers)
        self.report = IngestReport()

    @profile_timing("load_corpus", "corpus_ingest", "stage")
    def load(self, links_path: Path, tags_path: Path,
             basics_path: Path) -> Tuple[List[FilmRecord], List[TagApplication]]:
        """
        Read the three inputs and build the merged corpus

        Args:
            links_path: MovieLens links file
            tags_path: MovieLens tags file
            basics_path: IMDb basics file

        Returns:
            (films ordered by item_id, tag applications in file order)
        """
        links_reader = LinksReader(links_path)
        links = links_reader.read()
        self.report.links_rows = links_reader.rows_read
        self.report.malformed_rows['links'] = len(links_reader.errors)

        movielens_by_imdb = self._resolve_links(links)

        tags_reader = TagsReader(tags_path)
        basics_reader = BasicsReader(basics_path, wanted=set(movielens_by_imdb))
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            tags_future = pool.submit(tags_reader.read)
            basics_future = pool.submit(basics_reader.read)
            tag_rows = tags_future.result()
            basics_rows = basics_future.result()

        self.report.tags_rows = tags_reader.rows_read
        self.report.malformed_rows['tags'] = len(tags_reader.errors)
        self.report.malformed_rows['basics'] = len(basics_reader.errors)
        self.report.basics_rows_matched = len(basics_rows)

        basics_by_id = {row.imdb_id: row for row in basics_rows}
        missing = sorted(set(movielens_by_imdb) - set(basics_by_id))
        self.report.missing_from_basics = len(missing)
        if missing:
            logging.info(f"{len(missing)} linked IMDb ids are absent from basics and dropped")

        films: List[FilmRecord] = []
        item_of_movielens: Dict[int, int] = {}
        for item_id, imdb_id in enumerate(sorted(basics_by_id)):
            basics = basics_by_id[imdb_id]
            movielens_ids = tuple(sorted(movielens_by_imdb[imdb_id]))
            films.append(FilmRecord(
                item_id=item_id,
                movielens_ids=movielens_ids,
                imdb_id=imdb_id,
                title=basics.title,
                year=basics.year,
                title_type=TitleType.from_imdb(basics.title_type),
                is_documentary=config.DOCUMENTARY_GENRE in basics.genres,
                genres=basics.genres,
            ))
            for movielens_id in movielens_ids:
                item_of_movielens[movielens_id] = item_id

        tag_apps: List[TagApplication] = []
        for row in tag_rows:
            item_id = item_of_movielens.get(row.movielens_id)
            if item_id is None:
                self.report.applications_unknown_film += 1
                continue
            tag_apps.append(TagApplication(row.user_id, item_id, row.tag, row.timestamp))

        if self.report.applications_unknown_film:
            logging.info(f"Dropped {self.report.applications_unknown_film} tag applications for unloaded films")

        self.report.films_loaded = len(films)
        self.report.applications_loaded = len(tag_apps)
        logging.info(f"Loaded {len(films)} films and {len(tag_apps)} tag applications")
        return films, tag_apps

    def _resolve_links(self, links) -> Dict[str, List[int]]:
        """Apply overrides and group MovieLens ids by their IMDb id"""
        movielens_by_imdb: Dict[str, List[int]] = defaultdict(list)
        seen_movielens = set()
        for link in links:
            if link.movielens_id in seen_movielens:
                logging.warning(f"Duplicate movieId {link.movielens_id} in links; keeping the first row")
                continue
            seen_movielens.add(link.movielens_id)

            resolved = self.overrides.resolve(link.imdb_id)
            if resolved is None:
                self.report.exclusions += 1
                continue
            if resolved != link.imdb_id:
                self.report.overrides_applied += 1
            movielens_by_imdb[resolved].append(link.movielens_id)

        self.report.duplicates_merged = sum(len(ids) - 1 for ids in movielens_by_imdb.values())
        logging.info(
            f"Links: {self.report.overrides_applied} ids remapped, {self.report.exclusions} excluded, "
            f"{self.report.duplicates_merged} duplicate IMDb ids merged"
        )
        return movielens_by_imdb


def load_corpus(links_path: Path, tags_path: Path, basics_path: Path,
                overrides: Optional[IdOverrideTable] = None,
                report: Optional[IngestReport] = None) -> Tuple[List[FilmRecord], List[TagApplication]]:
    """Functional entry point; fills `report` when one is given"""
    loader = CorpusLoader(overrides)
    if report is not None:
        loader.report = report
    return loader.load(links_path, tags_path, basics_path)


def filter_narrative(films: List[FilmRecord], report: Optional[IngestReport] = None) -> List[FilmRecord]:
    """Keep movie/tvMovie titles that are not documentaries"""
    reasons: Counter = Counter()
    kept = []
    for film in films:
        if film.title_type.value not in config.NARRATIVE_TITLE_TYPES:
            reasons['title_type'] += 1
        elif film.is_documentary:
            reasons['documentary'] += 1
        else:
            kept.append(film)

    logging.info(
        f"Narrative filter kept {len(kept)} of {len(films)} films "
        f"(title type: {reasons['title_type']}, documentary: {reasons['documentary']})"
    )
    if report is not None:
        report.removed_title_type = reasons['title_type']
        report.removed_documentary = reasons['documentary']
        report.films_retained = len(kept)
    return kept


def retain_applications(tag_apps: List[TagApplication], films: List[FilmRecord],
                        report: Optional[IngestReport] = None) -> List[TagApplication]:
    """Drop applications whose film did not survive filtering"""
    retained_ids = {film.item_id for film in films}
    kept = [app for app in tag_apps if app.item_id in retained_ids]
    dropped = len(tag_apps) - len(kept)
    if dropped:
        logging.info(f"Dropped {dropped} tag applications on filtered films")
    if report is not None:
        report.applications_dropped = dropped
        report.applications_retained = len(kept)
    return kept
