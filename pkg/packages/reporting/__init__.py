"""Report tables and the run summary"""

from .report_generator import (
    NeighborRow,
    EraReport,
    indicator_tag_ids,
    report_neighbors,
    report_era_groups,
    era_frequencies,
)
from .run_summary import RunSummary

__all__ = [
    'NeighborRow',
    'EraReport',
    'indicator_tag_ids',
    'report_neighbors',
    'report_era_groups',
    'era_frequencies',
    'RunSummary',
]
