"""Stoplist and stem-override files"""

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set

from ..utils.error_handling import ConfigError, file_operation_safe
from .tag_normalizer import StemLexicon


@file_operation_safe("load stoplist")
def load_stoplist(path: Optional[Path]) -> List[str]:
    """One entry per line, UTF-8, `#` starts a comment"""
    if path is None:
        return []
    entries = []
    with open(path, 'r', encoding='utf-8') as f:
        for line in f:
            entry = line.split('#', 1)[0].strip()
            if entry:
                entries.append(entry)
    logging.info(f"Loaded {len(entries)} stoplist entries from {path}")
    return entries


@file_operation_safe("load stem overrides")
def load_stem_overrides(path: Optional[Path]) -> Dict[str, str]:
    """`canonical,stem` rows forcing a stem key for a canonical text"""
    if path is None:
        return {}
    overrides: Dict[str, str] = {}
    with open(path, 'r', encoding='utf-8', newline='') as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            return overrides
        if {'canonical', 'stem'} - set(reader.fieldnames):
            raise ConfigError(f"{path}: expected columns canonical,stem")
        for row_num, row in enumerate(reader, start=2):
            canonical = (row.get('canonical') or '').strip()
            key = (row.get('stem') or '').strip()
            if not canonical or not key:
                raise ConfigError(f"{path}:{row_num}: both canonical and stem are required")
            overrides[canonical] = key
    return overrides


@dataclass
class Stoplists:
    """Person-name and no-information tags removed before matrix construction"""
    person_names: List[str] = field(default_factory=list)
    no_information: List[str] = field(default_factory=list)

    @classmethod
    def load(cls, person_names_path: Optional[Path], no_information_path: Optional[Path]) -> "Stoplists":
        return cls(load_stoplist(person_names_path), load_stoplist(no_information_path))

    @staticmethod
    def _keys(entries: List[str], lexicon: StemLexicon) -> Set[str]:
        keys = set()
        for entry in entries:
            keys.add(entry)
            normalized = lexicon.stem_for_text(entry)
            if normalized:
                keys.add(normalized)
        return keys

    def person_name_keys(self, lexicon: StemLexicon) -> Set[str]:
        return self._keys(self.person_names, lexicon)

    def no_information_keys(self, lexicon: StemLexicon) -> Set[str]:
        return self._keys(self.no_information, lexicon)
