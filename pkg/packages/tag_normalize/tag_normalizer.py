"""Tag canonicalization, stemming and the stem lexicon"""

import logging
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from nltk.stem import PorterStemmer

from ..configuration import config

_stemmer = PorterStemmer()


def canonicalize(raw: str) -> Optional[str]:
    """
    Lowercase, strip punctuation and symbols, collapse whitespace

    Args:
        raw: Tag exactly as a user typed it

    Returns:
        Canonical text, or None when nothing is left after cleaning
    """
    if not raw:
        return None
    text = unicodedata.normalize('NFC', raw).lower()
    # Unicode categories P* (punctuation) and S* (symbols); digits survive
    text = ''.join(ch for ch in text if unicodedata.category(ch)[0] not in ('P', 'S'))
    text = ' '.join(text.split())
    return text or None


def stem(canonical: str, overrides: Optional[Dict[str, str]] = None) -> str:
    """Porter-stem each word; an override for the whole canonical text wins"""
    if overrides and canonical in overrides:
        return overrides[canonical]
    return ' '.join(_stemmer.stem(word) for word in canonical.split(' '))


class TagNormalizer:
    """Normalizes raw tags into stem keys with a configurable override table"""

    def __init__(self, custom_overrides: Optional[Dict[str, str]] = None):
        """
        Initialize the normalizer

        Args:
            custom_overrides: Additional canonical text -> stem key entries
        """
        self.overrides = dict(config.DEFAULT_STEM_OVERRIDES)
        if custom_overrides:
            self.overrides.update(custom_overrides)

    def canonicalize(self, raw: str) -> Optional[str]:
        return canonicalize(raw)

    def stem(self, canonical: str) -> str:
        return stem(canonical, self.overrides)

    def normalize(self, raw: str) -> Optional[str]:
        canonical = canonicalize(raw)
        if canonical is None:
            logging.debug(f"Tag {raw!r} is empty after cleaning")
            return None
        return self.stem(canonical)


@dataclass
class StemLexicon:
    """Maps raw tags to canonical texts, canonical texts to stems, stems to labels"""
    canonical_of: Dict[str, str] = field(default_factory=dict)
    stem_of: Dict[str, str] = field(default_factory=dict)
    label_of: Dict[str, str] = field(default_factory=dict)
    overrides: Dict[str, str] = field(default_factory=dict)
    canonical_counts: Counter = field(default_factory=Counter)
    merged_into: Dict[str, str] = field(default_factory=dict)
    dropped_empty: int = 0
    merge_count: int = 0

    @property
    def stems(self) -> List[str]:
        return sorted(self.label_of)

    def stem_for_raw(self, raw: str) -> Optional[str]:
        canonical = self.canonical_of.get(raw)
        if canonical is None:
            return None
        return self.stem_of[canonical]

    def stem_for_text(self, text: str) -> Optional[str]:
        """Run a hand-written tag through canonicalize, stem and space merging"""
        canonical = canonicalize(text)
        if canonical is None:
            return None
        if canonical in self.stem_of:
            return self.stem_of[canonical]

        key = stem(canonical, self.overrides)
        key = self.merged_into.get(key, key)
        spaceless = key.replace(' ', '')
        if key not in self.label_of and spaceless in self.label_of:
            return spaceless
        return key

    def rows(self) -> Iterable[Tuple[str, str, str, str]]:
        """(raw, canonical, stem, label) audit rows ordered by raw text"""
        for raw in sorted(self.canonical_of):
            canonical = self.canonical_of[raw]
            key = self.stem_of[canonical]
            yield raw, canonical, key, self.label_of[key]

    def refresh_labels(self):
        """Label each stem by its most used canonical text, ties to the smallest"""
        usage: Dict[str, List[Tuple[int, str]]] = defaultdict(list)
        for canonical, key in self.stem_of.items():
            usage[key].append((-self.canonical_counts.get(canonical, 0), canonical))
        self.label_of = {key: min(candidates)[1] for key, candidates in usage.items()}


def build_lexicon(raw_tags: Iterable[str], overrides: Optional[Dict[str, str]] = None) -> StemLexicon:
    """
    Build the lexicon from every raw tag occurrence

    Args:
        raw_tags: Raw tag texts, one per application (repeats count toward labels)
        overrides: canonical text -> forced stem key

    Returns:
        StemLexicon before space-variant merging
    """
    normalizer = TagNormalizer(overrides)
    lexicon = StemLexicon(overrides=normalizer.overrides)
    empty = set()

    for raw in raw_tags:
        canonical = lexicon.canonical_of.get(raw)
        if canonical is None:
            if raw in empty:
                lexicon.dropped_empty += 1
                continue
            canonical = canonicalize(raw)
            if canonical is None:
                empty.add(raw)
                lexicon.dropped_empty += 1
                continue
            lexicon.canonical_of[raw] = canonical
            if canonical not in lexicon.stem_of:
                lexicon.stem_of[canonical] = normalizer.stem(canonical)
        lexicon.canonical_counts[canonical] += 1

    lexicon.refresh_labels()
    if lexicon.dropped_empty:
        logging.info(f"Dropped {lexicon.dropped_empty} tag applications that were empty after cleaning")
    logging.info(
        f"Lexicon: {len(lexicon.canonical_of)} raw tags, {len(lexicon.stem_of)} canonical texts, "
        f"{len(lexicon.label_of)} stems"
    )
    return lexicon


def merge_space_variants(lexicon: StemLexicon) -> StemLexicon:
    """
    Merge stems that differ only by spaces ("anti hero" and "antihero")

    The merged stem key is the space-free text.
    """
    by_spaceless: Dict[str, List[str]] = defaultdict(list)
    for key in lexicon.label_of:
        by_spaceless[key.replace(' ', '')].append(key)

    merged_into = dict(lexicon.merged_into)
    merge_count = 0
    for spaceless, keys in by_spaceless.items():
        if len(keys) < 2:
            continue
        merge_count += 1
        for key in keys:
            if key != spaceless:
                merged_into[key] = spaceless
        logging.debug(f"Merged space variants {sorted(keys)} into {spaceless!r}")

    merged = StemLexicon(
        canonical_of=dict(lexicon.canonical_of),
        stem_of={canonical: merged_into.get(key, key) for canonical, key in lexicon.stem_of.items()},
        overrides=dict(lexicon.overrides),
        canonical_counts=Counter(lexicon.canonical_counts),
        merged_into=merged_into,
        dropped_empty=lexicon.dropped_empty,
        merge_count=lexicon.merge_count + merge_count,
    )
    merged.refresh_labels()
    logging.info(f"Merged {merge_count} groups of space variants; {len(merged.label_of)} stems remain")
    return merged
