"""Readers for the MovieLens links/tags files and the IMDb basics file"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Generic, List, Optional, Set, Tuple, TypeVar

from ..configuration import config
from ..utils.error_handling import DataError, RowError, check_malformed_share, file_operation_safe

RowT = TypeVar('RowT')


@dataclass(frozen=True)
class LinkRow:
    """movieId -> IMDb key"""
    movielens_id: int
    imdb_id: str


@dataclass(frozen=True)
class TagRow:
    """One raw line of the tags file"""
    user_id: int
    movielens_id: int
    tag: str
    timestamp: int


@dataclass(frozen=True)
class BasicsRow:
    """The IMDb basics columns the pipeline uses"""
    imdb_id: str
    title_type: str
    title: str
    year: Optional[int]
    genres: Tuple[str, ...]


class FlatFileReader(Generic[RowT]):
    """Reads a delimited file with a header, collecting malformed rows"""

    REQUIRED_COLUMNS: Tuple[str, ...] = ()
    DELIMITER = ','
    QUOTING = csv.QUOTE_MINIMAL

    def __init__(self, file_path: Path):
        """
        Initialize reader

        Args:
            file_path: Path to the input file
        """
        self.file_path = Path(file_path)
        self.rows: List[RowT] = []
        self.errors: List[RowError] = []
        self.rows_read = 0

    @file_operation_safe("read input file")
    def read(self) -> List[RowT]:
        """
        Read and parse the file

        Returns:
            Parsed rows, malformed rows excluded
        """
        with open(self.file_path, 'r', encoding='utf-8', newline='') as f:
            reader = csv.DictReader(f, delimiter=self.DELIMITER, quoting=self.QUOTING, restkey='__extra__')

            if reader.fieldnames is None:
                logging.warning(f"{self.file_path} is empty")
                return self.rows
            self._validate_headers(reader.fieldnames)

            try:
                for row in reader:
                    self.rows_read += 1
                    # DictReader counts physical lines, so quoted newlines keep numbers right
                    parsed = self._checked_row(row, reader.line_num)
                    if parsed is not None:
                        self.rows.append(parsed)
            except csv.Error as e:
                raise DataError(f"{self.file_path}:{reader.line_num}: CSV parsing error: {e}") from e

        check_malformed_share(self.file_path, self.errors, self.rows_read, config.MALFORMED_ROW_LIMIT)
        logging.info(f"Read {len(self.rows)} rows from {self.file_path} ({len(self.errors)} malformed)")
        return self.rows

    def _validate_headers(self, fieldnames: List[str]):
        missing = [name for name in self.REQUIRED_COLUMNS if name not in fieldnames]
        if missing:
            raise DataError(f"{self.file_path}: missing required columns: {', '.join(missing)}")

    def _checked_row(self, row: Dict[str, Any], line_number: int) -> Optional[RowT]:
        if '__extra__' in row or any(value is None for value in row.values()):
            self._error(line_number, "wrong number of fields")
            return None
        try:
            return self._parse_row(row)
        except ValueError as e:
            self._error(line_number, str(e))
            return None

    def _error(self, line_number: int, message: str):
        self.errors.append(RowError(str(self.file_path), line_number, message))

    def _parse_row(self, row: Dict[str, str]) -> Optional[RowT]:
        raise NotImplementedError


def _parse_int(value: str, column: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise ValueError(f"{column} is not an integer: {value!r}") from None


class LinksReader(FlatFileReader[LinkRow]):
    """links.csv: movieId,imdbId,tmdbId"""

    REQUIRED_COLUMNS = ('movieId', 'imdbId')

    def _parse_row(self, row: Dict[str, str]) -> LinkRow:
        movielens_id = _parse_int(row['movieId'], 'movieId')
        digits = row['imdbId'].strip()
        if not digits.isdigit():
            raise ValueError(f"imdbId is not zero-padded digits: {digits!r}")
        return LinkRow(movielens_id, f"tt{digits}")


class TagsReader(FlatFileReader[TagRow]):
    """tags.csv: userId,movieId,tag,timestamp with RFC-4180 quoting"""

    REQUIRED_COLUMNS = ('userId', 'movieId', 'tag', 'timestamp')

    def _parse_row(self, row: Dict[str, str]) -> TagRow:
        return TagRow(
            user_id=_parse_int(row['userId'], 'userId'),
            movielens_id=_parse_int(row['movieId'], 'movieId'),
            tag=row['tag'],
            timestamp=_parse_int(row['timestamp'], 'timestamp'),
        )


class BasicsReader(FlatFileReader[BasicsRow]):
    """
    title.basics.tsv, tab separated without quoting, `\\N` for missing

    Only rows whose tconst is in `wanted` are kept, since the full file holds
    millions of titles the corpus never references.
    """

    REQUIRED_COLUMNS = ('tconst', 'titleType', 'primaryTitle', 'startYear', 'genres')
    DELIMITER = '\t'
    QUOTING = csv.QUOTE_NONE

    def __init__(self, file_path: Path, wanted: Optional[Set[str]] = None):
        super().__init__(file_path)
        self.wanted = wanted

    def _parse_row(self, row: Dict[str, str]) -> Optional[BasicsRow]:
        imdb_id = row['tconst'].strip()
        if not imdb_id.startswith('tt'):
            raise ValueError(f"tconst is not an IMDb title id: {imdb_id!r}")
        if self.wanted is not None and imdb_id not in self.wanted:
            return None

        year_text = row['startYear'].strip()
        year = None if year_text == config.IMDB_MISSING else _parse_int(year_text, 'startYear')

        genres_text = row['genres'].strip()
        genres: Tuple[str, ...] = ()
        if genres_text and genres_text != config.IMDB_MISSING:
            genres = tuple(g.strip() for g in genres_text.split(',') if g.strip())

        return BasicsRow(
            imdb_id=imdb_id,
            title_type=row['titleType'].strip(),
            title=row['primaryTitle'],
            year=year,
            genres=genres,
        )
