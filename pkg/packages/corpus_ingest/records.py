"""Film, tag application and ID override records"""

import csv
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Optional, Set, Tuple

from ..configuration import config
from ..utils.error_handling import ConfigError, file_operation_safe


class TitleType(Enum):
    """IMDb title types the pipeline distinguishes"""
    MOVIE = "movie"
    TV_MOVIE = "tvMovie"
    OTHER = "other"

    @classmethod
    def from_imdb(cls, value: str) -> "TitleType":
        for member in cls:
            if member.value == value:
                return member
        return cls.OTHER


@dataclass(frozen=True)
class FilmRecord:
    """One film present in both the MovieLens links and IMDb basics"""
    item_id: int
    movielens_ids: Tuple[int, ...]
    imdb_id: str
    title: str
    year: Optional[int]
    title_type: TitleType
    is_documentary: bool
    genres: Tuple[str, ...] = ()

    @property
    def movielens_id(self) -> int:
        return self.movielens_ids[0]

    @property
    def is_narrative(self) -> bool:
        return self.title_type.value in config.NARRATIVE_TITLE_TYPES and not self.is_documentary

    def is_positive(self, keyword: str = config.POSITIVE_GENRE) -> bool:
        """True when IMDb lists the keyword among the film's genres"""
        return keyword in self.genres

    def __str__(self) -> str:
        year = self.year if self.year is not None else "?"
        return f"{self.title} ({year}) [{self.imdb_id}]"


@dataclass(frozen=True)
class TagApplication:
    """One user applying one raw tag to one retained film"""
    user_id: int
    item_id: int
    raw_tag: str
    timestamp: int


@dataclass
class IdOverrideTable:
    """Manual IMDb id fixes: stale id remaps and excluded ids"""
    remaps: Dict[str, str] = field(default_factory=dict)
    exclusions: Set[str] = field(default_factory=set)

    def __post_init__(self):
        self.validate()

    def validate(self):
        clashes = sorted(set(self.remaps.values()) & self.exclusions)
        if clashes:
            raise ConfigError(f"Override remap targets are also excluded: {', '.join(clashes)}")

    def resolve(self, imdb_id: str) -> Optional[str]:
        """Current id for imdb_id, or None when the id is excluded"""
        if imdb_id in self.exclusions:
            return None
        return self.remaps.get(imdb_id, imdb_id)

    def __len__(self) -> int:
        return len(self.remaps) + len(self.exclusions)

    @classmethod
    @file_operation_safe("load id overrides")
    def load(cls, path: Optional[Path]) -> "IdOverrideTable":
        """
        Parse a `stale_imdb_id,new_imdb_id` file; an empty new id excludes the film

        Args:
            path: Override file, or None for an empty table

        Returns:
            IdOverrideTable
        """
        if path is None:
            return cls()

        remaps: Dict[str, str] = {}
        exclusions: Set[str] = set()
        with open(path, 'r', encoding='utf-8', newline='') as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None:
                return cls()
            if {'stale_imdb_id', 'new_imdb_id'} - set(reader.fieldnames):
                raise ConfigError(f"{path}: expected columns stale_imdb_id,new_imdb_id")

            for row_num, row in enumerate(reader, start=2):
                stale = (row.get('stale_imdb_id') or '').strip()
                new = (row.get('new_imdb_id') or '').strip()
                if not stale:
                    raise ConfigError(f"{path}:{row_num}: missing stale_imdb_id")
                if stale in remaps or stale in exclusions:
                    raise ConfigError(f"{path}:{row_num}: duplicate entry for {stale}")
                if new:
                    remaps[stale] = new
                else:
                    exclusions.add(stale)

        logging.info(f"Loaded {len(remaps)} id remaps and {len(exclusions)} exclusions from {path}")
        return cls(remaps=remaps, exclusions=exclusions)
