"""
Weighted Newman-Girvan modularity and its maximization.

Components up to EXACT_PARTITION_LIMIT vertices are solved exactly by
branch-and-bound over set partitions; larger ones use greedy agglomeration
followed by single-vertex moves.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..configuration import config

Partition = List[List[int]]


def canonical(groups: Iterable[Iterable[int]]) -> Partition:
    """Sort members inside groups and groups by their smallest member"""
    ordered = [sorted(int(v) for v in group) for group in groups if group]
    ordered.sort()
    return ordered


def modularity_matrix(graph: nx.Graph, nodes: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, float]:
    """
    B = A - k kᵀ / 2m over `nodes` order

    Returns:
        (B, 2m); 2m is 0 for an edgeless graph
    """
    nodes = list(nodes) if nodes is not None else sorted(graph.nodes)
    adjacency = nx.to_numpy_array(graph, nodelist=nodes, weight='weight', dtype=np.float64)
    np.fill_diagonal(adjacency, 0.0)
    degrees = adjacency.sum(axis=1)
    two_m = float(degrees.sum())
    if two_m == 0:
        return np.zeros_like(adjacency), 0.0
    return adjacency - np.outer(degrees, degrees) / two_m, two_m


def modularity(graph: nx.Graph, groups: Iterable[Iterable[int]]) -> float:
    """Modularity of a partition of `graph`; 0 for an edgeless graph"""
    nodes = sorted(graph.nodes)
    b_matrix, two_m = modularity_matrix(graph, nodes)
    if two_m == 0:
        return 0.0
    position = {node: i for i, node in enumerate(nodes)}
    total = 0.0
    for group in canonical(groups):
        index = [position[v] for v in group]
        total += float(b_matrix[np.ix_(index, index)].sum())
    return total / two_m


def _tie_key(groups: Partition) -> Tuple[int, Partition]:
    return len(groups), groups


def _better(score: float, groups: Partition, best_score: float, best_groups: Optional[Partition],
            tolerance: float) -> bool:
    if best_groups is None or score > best_score + tolerance:
        return True
    if score >= best_score - tolerance:
        return _tie_key(groups) < _tie_key(best_groups)
    return False


def exact_partition(graph: nx.Graph, tolerance: float = config.MODULARITY_TOLERANCE) -> Partition:
    """
    Maximum-modularity partition by branch-and-bound

    Vertices are assigned one at a time (restricted growth strings). The bound
    adds, for each unassigned vertex, the best gain of joining an existing
    group, plus every positive B entry among unassigned pairs.
    """
    nodes = sorted(graph.nodes)
    n = len(nodes)
    if n <= 1:
        return canonical([nodes])
    b_matrix, two_m = modularity_matrix(graph, nodes)
    if two_m == 0:
        return canonical([[v] for v in nodes])

    # Strongly connected vertices first tightens the bound early
    strength = np.abs(b_matrix).sum(axis=1)
    order = sorted(range(n), key=lambda i: (-strength[i], i))
    b = b_matrix[np.ix_(order, order)]
    positive_pairs = np.triu(np.clip(2.0 * b, 0.0, None), k=1)
    # Sum of positive pair entries among vertices k..n-1
    tail_pairs = np.zeros(n + 1)
    for k in range(n - 1, -1, -1):
        tail_pairs[k] = positive_pairs[k:, k:].sum()
    diagonal = float(np.trace(b))

    best_score = -np.inf
    best_groups: Optional[Partition] = None
    labels = [0] * n
    # group_gain[g][v]: 2 * sum of B between v and the members of group g
    group_gain: List[np.ndarray] = []

    def assign(k: int, score: float):
        nonlocal best_score, best_groups
        if k == n:
            groups: Dict[int, List[int]] = {}
            for position, label in enumerate(labels):
                groups.setdefault(label, []).append(nodes[order[position]])
            candidate = canonical(groups.values())
            total = (score + diagonal) / two_m
            if _better(total, candidate, best_score, best_groups, tolerance):
                best_score, best_groups = total, candidate
            return

        bound = score + diagonal + tail_pairs[k]
        if group_gain:
            gains = np.stack(group_gain)[:, k:]
            bound += float(np.clip(gains.max(axis=0), 0.0, None).sum())
        if bound / two_m < best_score - tolerance:
            return

        options = [(float(group_gain[g][k]), g) for g in range(len(group_gain))]
        options.append((0.0, len(group_gain)))
        # Most promising branch first so good incumbents appear early
        options.sort(key=lambda item: -item[0])
        for gain, g in options:
            labels[k] = g
            if g == len(group_gain):
                group_gain.append(2.0 * b[k].copy())
                assign(k + 1, score + gain)
                group_gain.pop()
            else:
                previous = group_gain[g]
                group_gain[g] = previous + 2.0 * b[k]
                assign(k + 1, score + gain)
                group_gain[g] = previous

    assign(0, 0.0)
    return best_groups


def refine_by_moves(graph: nx.Graph, groups: Partition,
                    tolerance: float = config.MODULARITY_TOLERANCE) -> Partition:
    """Move single vertices between groups while modularity strictly improves"""
    nodes = sorted(graph.nodes)
    b_matrix, two_m = modularity_matrix(graph, nodes)
    if two_m == 0:
        return canonical(groups)
    position = {node: i for i, node in enumerate(nodes)}
    label = np.empty(len(nodes), dtype=np.int64)
    for g, group in enumerate(groups):
        for v in group:
            label[position[v]] = g
    next_label = len(groups)

    improved = True
    while improved:
        improved = False
        for i in range(len(nodes)):
            current = label[i]
            row = b_matrix[i].copy()
            row[i] = 0.0
            gain_of = {}
            for g in np.unique(label):
                gain_of[int(g)] = 2.0 * float(row[label == g].sum())
            stay = gain_of[int(current)]
            best_label, best_gain = int(current), stay
            # Moving out to a fresh group is worth 0
            for g, gain in sorted(gain_of.items()):
                if g != current and gain > best_gain + tolerance * two_m:
                    best_label, best_gain = g, gain
            if (label == current).sum() > 1 and 0.0 > best_gain + tolerance * two_m:
                best_label, best_gain = next_label, 0.0
                next_label += 1
            if best_label != current:
                label[i] = best_label
                improved = True

    by_label: Dict[int, List[int]] = {}
    for i, g in enumerate(label):
        by_label.setdefault(int(g), []).append(nodes[i])
    return canonical(by_label.values())


def greedy_partition(graph: nx.Graph, tolerance: float = config.MODULARITY_TOLERANCE) -> Partition:
    """Greedy agglomeration refined to a single-move local optimum"""
    if graph.number_of_edges() == 0:
        return canonical([[v] for v in graph.nodes])
    communities = nx.algorithms.community.greedy_modularity_communities(graph, weight='weight')
    groups = refine_by_moves(graph, canonical(communities), tolerance)
    single = canonical([graph.nodes])
    if modularity(graph, groups) < modularity(graph, single) - tolerance:
        logging.debug("Greedy partition scored below the single group; keeping one group")
        return single
    return groups
