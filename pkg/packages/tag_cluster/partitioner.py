"""Tag groups: modularity partitions of every weakly connected component"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp

from ..configuration import config
from ..tag_normalize.matrix_builder import FilmTagMatrix
from ..utils.error_handling import require
from ..utils.performance_profiler import profile_timing
from .modularity import Partition, canonical, exact_partition, greedy_partition
from .tag_graph import TagGraph, build_strong_graph, weak_components


def partition_component(subgraph: nx.Graph, exact_limit: int = config.EXACT_PARTITION_LIMIT) -> Partition:
    """
    Maximum-modularity partition of one component's undirected w_ud graph

    Args:
        subgraph: Undirected graph with 'weight' edge attributes
        exact_limit: Largest vertex count solved exactly

    Returns:
        Groups as sorted vertex lists, ordered by smallest vertex
    """
    if subgraph.number_of_nodes() <= exact_limit:
        return exact_partition(subgraph)
    return greedy_partition(subgraph)


def _partition_job(job: Tuple[nx.Graph, int]) -> Partition:
    subgraph, exact_limit = job
    return partition_component(subgraph, exact_limit)


@dataclass
class TagGrouping:
    """Partition of the retained tags into groups (Ψ)"""
    group_of: np.ndarray
    members: List[List[int]]

    def __post_init__(self):
        self.group_of = np.asarray(self.group_of, dtype=np.int64)

    @property
    def n_groups(self) -> int:
        return len(self.members)

    @property
    def n_tags(self) -> int:
        return len(self.group_of)

    def psi(self) -> sp.csr_matrix:
        """Binary L x M tag-group matrix"""
        rows = np.arange(self.n_tags)
        return sp.csr_matrix(
            (np.ones(self.n_tags, dtype=np.int64), (rows, self.group_of)),
            shape=(self.n_tags, self.n_groups),
        )

    def label(self, group_id: int, tag_labels: Sequence[str]) -> str:
        return "{" + ", ".join(tag_labels[t] for t in self.members[group_id]) + "}"

    def validate(self):
        require(all(self.members), "empty tag group")
        seen = sorted(t for group in self.members for t in group)
        require(seen == list(range(self.n_tags)), "tag groups do not partition the tags")
        for group_id, group in enumerate(self.members):
            require(all(self.group_of[t] == group_id for t in group), "group_of disagrees with members")

    @classmethod
    def from_group_of(cls, group_of: Sequence[int]) -> "TagGrouping":
        group_of = np.asarray(group_of, dtype=np.int64)
        n_groups = int(group_of.max()) + 1 if len(group_of) else 0
        members: List[List[int]] = [[] for _ in range(n_groups)]
        for tag, group_id in enumerate(group_of):
            members[int(group_id)].append(tag)
        grouping = cls(group_of, members)
        grouping.validate()
        return grouping


@dataclass
class ClusterReport:
    """Graph and grouping statistics"""
    tags: int = 0
    edges: int = 0
    components: int = 0
    singleton_components: int = 0
    largest_component: int = 0
    components_exact: int = 0
    components_heuristic: int = 0
    groups: int = 0
    min_group_size: int = 0
    max_group_size: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)


@profile_timing("cluster_tags", "tag_cluster", "stage")
def cluster_tags(gamma: FilmTagMatrix, workers: int = 1, graph: Optional[TagGraph] = None,
                 exact_limit: int = config.EXACT_PARTITION_LIMIT,
                 report: Optional[ClusterReport] = None) -> TagGrouping:
    """
    Strong graph -> weak components -> per-component partitions

    Group ids follow components ordered by smallest tag id, then groups
    within a component by smallest tag id, so the result never depends on
    worker scheduling.
    """
    graph = graph if graph is not None else build_strong_graph(gamma)
    components = weak_components(graph)
    report = report if report is not None else ClusterReport()

    jobs = [(graph.undirected(component), exact_limit) for component in components]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partitions = list(pool.map(_partition_job, jobs, chunksize=16))
    else:
        partitions = [_partition_job(job) for job in jobs]

    members: List[List[int]] = []
    for partition in partitions:
        members.extend(canonical(partition))
    group_of = np.empty(gamma.n_tags, dtype=np.int64)
    for group_id, group in enumerate(members):
        group_of[group] = group_id
    grouping = TagGrouping(group_of, members)
    grouping.validate()

    sizes = [len(group) for group in members]
    report.tags = gamma.n_tags
    report.edges = graph.n_edges
    report.components = len(components)
    report.singleton_components = sum(1 for c in components if len(c) == 1)
    report.largest_component = max((len(c) for c in components), default=0)
    report.components_exact = sum(1 for c in components if len(c) <= exact_limit)
    report.components_heuristic = len(components) - report.components_exact
    report.groups = grouping.n_groups
    report.min_group_size = min(sizes, default=0)
    report.max_group_size = max(sizes, default=0)
    logging.info(
        f"Tag groups: {report.components} components ({report.components_heuristic} solved greedily), "
        f"M={report.groups}, group sizes {report.min_group_size}-{report.max_group_size}"
    )
    return grouping
