"""Tag normalization: canonical texts, stems, filters and the film-tag matrix"""

from .tag_normalizer import TagNormalizer, StemLexicon, canonicalize, stem, build_lexicon, merge_space_variants
from .stoplists import Stoplists, load_stoplist, load_stem_overrides
from .matrix_builder import FilmTagMatrix, FilterReport, build_matrix

__all__ = [
    'TagNormalizer',
    'StemLexicon',
    'canonicalize',
    'stem',
    'build_lexicon',
    'merge_space_variants',
    'Stoplists',
    'load_stoplist',
    'load_stem_overrides',
    'FilmTagMatrix',
    'FilterReport',
    'build_matrix',
]
