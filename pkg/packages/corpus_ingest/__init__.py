"""Corpus ingest: identifiers, readers and the narrative-film filter"""

from .records import FilmRecord, TagApplication, IdOverrideTable, TitleType
from .readers import LinksReader, TagsReader, BasicsReader, LinkRow, TagRow, BasicsRow
from .corpus_loader import CorpusLoader, IngestReport, load_corpus, filter_narrative, retain_applications

__all__ = [
    'FilmRecord',
    'TagApplication',
    'IdOverrideTable',
    'TitleType',
    'LinksReader',
    'TagsReader',
    'BasicsReader',
    'LinkRow',
    'TagRow',
    'BasicsRow',
    'CorpusLoader',
    'IngestReport',
    'load_corpus',
    'filter_narrative',
    'retain_applications',
]
