"""Strongly-related tag graph over the film-tag incidence"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import networkx as nx
import numpy as np
import scipy.sparse as sp

from ..configuration import config
from ..tag_normalize.matrix_builder import FilmTagMatrix
from ..utils.error_handling import require
from ..utils.performance_profiler import profile_timing


def _incidence(gamma: Union[FilmTagMatrix, sp.spmatrix]) -> sp.csc_matrix:
    matrix = gamma.incidence if isinstance(gamma, FilmTagMatrix) else gamma
    return sp.csc_matrix(matrix, dtype=np.int64)


def tag_cosine(gamma: Union[FilmTagMatrix, sp.spmatrix], l1: int, l2: int) -> float:
    """Cosine similarity of two binary tag columns"""
    columns = _incidence(gamma)
    a = columns.getcol(l1)
    b = columns.getcol(l2)
    norm_a = a.nnz
    norm_b = b.nnz
    require(norm_a > 0 and norm_b > 0, f"tag column {l1 if norm_a == 0 else l2} is empty")
    shared = int(a.multiply(b).sum())
    return shared / math.sqrt(norm_a * norm_b)


def cooccurrence(gamma: Union[FilmTagMatrix, sp.spmatrix]) -> sp.csr_matrix:
    """
    Sparse ΓᵀΓ: shared-film counts for every pair of tags that co-occur

    Only pairs sharing a film get an entry, as with an inverted index over films.
    """
    columns = _incidence(gamma)
    shared = (columns.T @ columns).tocsr()
    shared.sort_indices()
    return shared


@dataclass
class TagGraph:
    """Directed strongly-related-tag graph; edge weight = cosine similarity"""
    digraph: nx.DiGraph

    @property
    def n_vertices(self) -> int:
        return self.digraph.number_of_nodes()

    @property
    def n_edges(self) -> int:
        return self.digraph.number_of_edges()

    def weight(self, a: int, b: int) -> float:
        data = self.digraph.get_edge_data(a, b)
        return data['weight'] if data else 0.0

    def undirected(self, vertices: Optional[List[int]] = None) -> nx.Graph:
        """Symmetrized graph with w_ud(a, b) = w(a, b) + w(b, a)"""
        source = self.digraph if vertices is None else self.digraph.subgraph(vertices)
        graph = nx.Graph()
        graph.add_nodes_from(sorted(source.nodes))
        for a, b, data in sorted(source.edges(data=True)):
            if graph.has_edge(a, b):
                graph[a][b]['weight'] += data['weight']
            else:
                graph.add_edge(a, b, weight=data['weight'])
        return graph

    def edges(self):
        """(from, to, weight) ordered by (from, to)"""
        return sorted((a, b, data['weight']) for a, b, data in self.digraph.edges(data=True))


@profile_timing("build_strong_graph", "tag_cluster", "stage")
def build_strong_graph(gamma: Union[FilmTagMatrix, sp.spmatrix],
                       tie_tolerance: float = config.COSINE_TIE_TOLERANCE) -> TagGraph:
    """
    Edge from every tag to each tag achieving its maximum cosine

    Ties (within a relative tolerance) all get edges; tags that co-occur with
    nothing have no out-edges.
    """
    shared = cooccurrence(gamma)
    counts = shared.diagonal().astype(np.float64)
    n_tags = shared.shape[0]

    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(n_tags))

    for tag in range(n_tags):
        start, end = shared.indptr[tag], shared.indptr[tag + 1]
        partners = shared.indices[start:end]
        overlap = shared.data[start:end].astype(np.float64)
        others = partners != tag
        partners, overlap = partners[others], overlap[others]
        if partners.size == 0:
            continue
        cosines = overlap / np.sqrt(counts[tag] * counts[partners])
        best = cosines.max()
        if best <= 0:
            continue
        for partner, cosine in zip(partners, cosines):
            if cosine >= best * (1.0 - tie_tolerance):
                digraph.add_edge(tag, int(partner), weight=float(cosine))

    isolated = sum(1 for tag in range(n_tags) if digraph.out_degree(tag) == 0)
    logging.info(f"Strong graph: {n_tags} tags, {digraph.number_of_edges()} edges, "
                 f"{isolated} tags without co-occurring partners")
    return TagGraph(digraph)


def weak_components(graph: TagGraph) -> List[List[int]]:
    """Weakly connected vertex sets, each sorted, ordered by smallest vertex"""
    components = [sorted(c) for c in nx.weakly_connected_components(graph.digraph)]
    components.sort(key=lambda c: c[0])
    return components
