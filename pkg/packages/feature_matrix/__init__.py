"""TgFIFF feature weighting"""

from .tgfiff import (
    GroupFrequencyMatrix,
    FeatureMatrix,
    FeatureReport,
    group_frequency,
    ifmf,
    tgfiff,
    unit_normalize,
    build_features,
)

__all__ = [
    'GroupFrequencyMatrix',
    'FeatureMatrix',
    'FeatureReport',
    'group_frequency',
    'ifmf',
    'tgfiff',
    'unit_normalize',
    'build_features',
]
