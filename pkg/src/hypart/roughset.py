"""Vertex core extraction via hyperedge clustering.

The coarsening stage treats hyperedges as features of the vertices. A
similarity graph over the hyperedges (two hyperedges are adjacent when
their scaled Jaccard similarity reaches a threshold ``s``) splits the
hyperedge set into disjoint clusters, the connected components of that
graph. Counting, per vertex, how many incident hyperedges fall into each
cluster and binarising those counts against a clustering threshold ``c``
yields a signature per vertex. Vertices sharing an identical nonzero
signature form a core; vertices whose signature is all zero are
non-core. Cores group vertices by global structure and are searched
first when looking for contraction pairs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Tuple

from .model import Hypergraph


@dataclass
class EdgePartitioning:
    """Assignment of every hyperedge to exactly one cluster.

    ``clusters`` are disjoint, cover all hyperedges and are stored as
    ascending id lists; ``cluster_of[e]`` is the cluster id of hyperedge
    ``e``. The representative of a cluster (used for reporting only) is
    its lowest hyperedge id.
    """

    cluster_of: List[int]
    clusters: List[List[int]]
    cluster_weight: List[int]
    cluster_size: List[int]

    def representative(self, c_id: int) -> int:
        return self.clusters[c_id][0]


@dataclass
class CoreDecomposition:
    """Disjoint vertex cores plus singleton and non-core lists.

    ``cores`` holds groups of two or more vertices with identical
    nonzero signatures; ``singleton_cores`` holds vertices whose nonzero
    signature is unique (they cannot be pair-matched inside a core and
    behave like non-core vertices during matching); ``non_core`` holds
    vertices with an all-zero signature, including isolated vertices.
    """

    cores: List[List[int]]
    singleton_cores: List[int]
    non_core: List[int]


def info_value(h: Hypergraph, v: int, e: int) -> float:
    """Information-system value of vertex ``v`` at hyperedge ``e``.

    The weight of ``e`` normalised by the total incident weight of ``v``
    when ``e`` contains ``v``, and 0 otherwise. Values over all
    hyperedges of a vertex with positive degree sum to 1.
    """
    incident = h.pins_by_vertex[v]
    if e not in incident:
        return 0.0
    total = sum(h.hyperedge_weight[e2] for e2 in incident)
    return h.hyperedge_weight[e] / total


def hyperedge_similarity(h: Hypergraph, ei: int, ej: int,
                         max_weight: int | None = None) -> float:
    """Scaled Jaccard similarity between two distinct hyperedges.

    Jaccard index of the two pin sets, scaled by
    (w(ei) + w(ej)) / (2 * max hyperedge weight). Equals the plain
    Jaccard index when all hyperedge weights are equal.
    """
    if ei == ej:
        raise ValueError("similarity requires two distinct hyperedges")
    if max_weight is None:
        max_weight = h.max_hyperedge_weight()
    a = h.pins_by_hyperedge[ei]
    b = h.pins_by_hyperedge[ej]
    inter = _sorted_intersection_size(a, b)
    union = len(a) + len(b) - inter
    if union == 0:
        return 0.0
    scale = (h.hyperedge_weight[ei] + h.hyperedge_weight[ej]) / (2.0 * max_weight)
    return (inter / union) * scale


def _sorted_intersection_size(a: List[int], b: List[int]) -> int:
    i = j = count = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            count += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return count


def build_edge_partitions(h: Hypergraph, s: float) -> EdgePartitioning:
    """Cluster hyperedges into connected components of the similarity graph.

    Two hyperedges with similarity >= ``s`` end up in the same cluster.
    Clusters are grown breadth-first from each still-unassigned
    hyperedge; because they are full connected components, the visiting
    order does not change the result.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"similarity threshold must lie in (0, 1), got {s}")
    m = h.num_hyperedges
    cluster_of = [-1] * m
    clusters: List[List[int]] = []
    max_w = h.max_hyperedge_weight()
    scale_den = 2.0 * max_w
    weights = h.hyperedge_weight
    by_edge = h.pins_by_hyperedge
    by_vertex = h.pins_by_vertex
    overlap = [0] * m

    for seed in range(m):
        if cluster_of[seed] != -1:
            continue
        c_id = len(clusters)
        cluster_of[seed] = c_id
        members = [seed]
        queue = deque([seed])
        queue_pop = queue.popleft
        queue_push = queue.append
        while queue:
            e = queue_pop()
            pins = by_edge[e]
            size_e = len(pins)
            w_e = weights[e]
            touched = []
            touch = touched.append
            for v in pins:
                for e2 in by_vertex[v]:
                    if e2 != e and cluster_of[e2] == -1:
                        if overlap[e2] == 0:
                            touch(e2)
                        overlap[e2] += 1
            for e2 in touched:
                inter = overlap[e2]
                overlap[e2] = 0
                union = size_e + len(by_edge[e2]) - inter
                sim = (inter / union) * ((w_e + weights[e2]) / scale_den)
                if sim >= s:
                    cluster_of[e2] = c_id
                    members.append(e2)
                    queue_push(e2)
        clusters.append(sorted(members))

    cluster_weight = [sum(weights[e] for e in members) for members in clusters]
    cluster_size = [len(members) for members in clusters]
    return EdgePartitioning(cluster_of, clusters, cluster_weight, cluster_size)


def reduced_value(h: Hypergraph, ep: EdgePartitioning, v: int, c_id: int) -> int:
    """Number of hyperedges of cluster ``c_id`` incident to vertex ``v``."""
    cluster_of = ep.cluster_of
    return sum(1 for e in h.pins_by_vertex[v] if cluster_of[e] == c_id)


def extract_cores(h: Hypergraph, ep: EdgePartitioning, c: float,
                  drop_unit_clusters: bool = False) -> CoreDecomposition:
    """Group vertices by identical binary cluster signatures.

    The signature bit of vertex ``v`` for a cluster is set when the
    vertex has at least one incident hyperedge in the cluster and the
    fraction of its incident hyperedges falling into that cluster is at
    least ``c``. Requiring a positive count means that at ``c == 0`` a
    bit reads "any incidence" instead of marking every cluster.

    With ``drop_unit_clusters`` set, clusters containing a single
    hyperedge contribute no signature bits; combined with ``c == 0``
    this is the default thresholding strategy of the driver.

    Vertices of degree zero go straight to the non-core list. Grouping
    is order independent.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"clustering threshold must lie in [0, 1], got {c}")
    active = [True] * len(ep.clusters)
    if drop_unit_clusters:
        for c_id, size in enumerate(ep.cluster_size):
            if size < 2:
                active[c_id] = False

    cluster_of = ep.cluster_of
    groups: dict[Tuple[int, ...], List[int]] = {}
    non_core: List[int] = []
    for v in range(h.num_vertices):
        incident = h.pins_by_vertex[v]
        d = len(incident)
        if d == 0:
            non_core.append(v)
            continue
        counts: dict[int, int] = {}
        for e in incident:
            c_id = cluster_of[e]
            counts[c_id] = counts.get(c_id, 0) + 1
        bits = tuple(sorted(
            c_id for c_id, cnt in counts.items()
            if active[c_id] and cnt / d >= c
        ))
        if not bits:
            non_core.append(v)
        else:
            groups.setdefault(bits, []).append(v)

    cores = [members for members in groups.values() if len(members) >= 2]
    singletons = [members[0] for members in groups.values() if len(members) == 1]
    return CoreDecomposition(cores, singletons, non_core)
