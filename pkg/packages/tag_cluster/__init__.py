"""Tag clustering: strong graph, weak components and modularity groups"""

from .tag_graph import TagGraph, tag_cosine, cooccurrence, build_strong_graph, weak_components
from .modularity import modularity, modularity_matrix, exact_partition, greedy_partition, refine_by_moves, canonical
from .partitioner import TagGrouping, ClusterReport, partition_component, cluster_tags

__all__ = [
    'TagGraph',
    'tag_cosine',
    'cooccurrence',
    'build_strong_graph',
    'weak_components',
    'modularity',
    'modularity_matrix',
    'exact_partition',
    'greedy_partition',
    'refine_by_moves',
    'canonical',
    'TagGrouping',
    'ClusterReport',
    'partition_component',
    'cluster_tags',
]
