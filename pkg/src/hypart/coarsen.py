"""Vertex matching, contraction and the similarity-threshold machinery.

Matching pairs vertices for contraction, first inside vertex cores and
then over the remaining pool until the per-level compression ratio
(fine vertex count over coarse vertex count) reaches the lower edge of
the 1.5 to 1.8 band. Contraction merges mates, drops hyperedges that
shrink to a single pin and fuses hyperedges with identical pin sets.
The clustering-coefficient helpers seed and update the similarity
threshold used to build hyperedge clusters at each level.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .model import Hypergraph
from .roughset import CoreDecomposition

RATIO_BAND = (1.5, 1.8)
THRESHOLD_CLAMP = (0.05, 0.95)


class Matching:
    """An involutive pairing of vertices plus the induced coarse ids.

    ``mate[v]`` is the partner of ``v`` or None; coarse ids are assigned
    in ascending order of the lowest vertex id of each group, so equal
    mate arrays always produce the same coarse numbering.
    """

    __slots__ = ("mate", "coarse_id", "num_coarse")

    def __init__(self, mate: Sequence[Optional[int]]):
        self.mate = list(mate)
        n = len(self.mate)
        coarse_id = [-1] * n
        nxt = 0
        for v in range(n):
            if coarse_id[v] != -1:
                continue
            coarse_id[v] = nxt
            m = self.mate[v]
            if m is not None:
                coarse_id[m] = nxt
            nxt += 1
        self.coarse_id = coarse_id
        self.num_coarse = nxt

    def num_pairs(self) -> int:
        return sum(1 for m in self.mate if m is not None) // 2


@dataclass
class LevelLink:
    """One coarsening step: the coarse hypergraph plus the vertex map."""

    fine: Hypergraph
    coarse: Hypergraph
    coarse_id: List[int]
    dropped_unit_edges: int
    merged_edge_groups: int


@dataclass(frozen=True)
class ThresholdState:
    """Similarity threshold plus the average degree it was tuned for."""

    s: float
    avg_degree: float


def weighted_jaccard(h: Hypergraph, u: int, v: int) -> float:
    """Weighted Jaccard similarity of two vertices' incidence sets.

    Sum of hyperedge weights over the shared hyperedges divided by the
    sum over the union. Zero when nothing is shared (including the case
    of two isolated vertices), one exactly for identical incidence.
    """
    if u == v:
        raise ValueError("weighted_jaccard requires two distinct vertices")
    a = h.pins_by_vertex[u]
    b = h.pins_by_vertex[v]
    weights = h.hyperedge_weight
    i = j = 0
    shared = union = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            shared += weights[x]
            union += weights[x]
            i += 1
            j += 1
        elif x < y:
            union += weights[x]
            i += 1
        else:
            union += weights[y]
            j += 1
    while i < la:
        union += weights[a[i]]
        i += 1
    while j < lb:
        union += weights[b[j]]
        j += 1
    if union == 0:
        return 0.0
    return shared / union


def _best_mate(h: Hypergraph, u: int, candidates: set, incident_weight: List[int],
               restrict: Optional[set] = None) -> Optional[int]:
    """Unmatched candidate with maximum weighted Jaccard to ``u``.

    Ties break to the lower vertex id. When no candidate shares a
    hyperedge with ``u`` the lowest-id candidate wins (all similarities
    are zero). ``restrict`` additionally filters the accumulation walk.
    """
    shared: dict[int, int] = {}
    weights = h.hyperedge_weight
    for e in h.pins_by_vertex[u]:
        w = weights[e]
        for x in h.pins_by_hyperedge[e]:
            if x != u and x in candidates and (restrict is None or x in restrict):
                shared[x] = shared.get(x, 0) + w
    if not shared:
        return min(candidates) if candidates else None
    wu = incident_weight[u]
    best = None
    best_j = -1.0
    for x in sorted(shared):
        sw = shared[x]
        union = wu + incident_weight[x] - sw
        j = sw / union if union > 0 else 0.0
        if j > best_j:
            best_j = j
            best = x
    return best


def match_in_cores(h: Hypergraph, cores: CoreDecomposition,
                   rng: random.Random) -> Tuple[Matching, List[int]]:
    """Pair vertices inside each core by maximum weighted Jaccard.

    Per core: pick a random unmatched vertex, mate it with the most
    similar unmatched vertex of the same core, repeat. Core members that
    stay unmatched, singleton-core vertices and non-core vertices form
    the leftover pool handed to :func:`match_noncore`.
    """
    mate: List[Optional[int]] = [None] * h.num_vertices
    incident_weight = h.vertex_incident_weights()
    leftovers: List[int] = []
    for core in cores.cores:
        unmatched = sorted(core)
        unmatched_set = set(unmatched)
        while len(unmatched) >= 2:
            u = unmatched.pop(rng.randrange(len(unmatched)))
            unmatched_set.discard(u)
            v = _best_mate(h, u, unmatched_set, incident_weight)
            mate[u] = v
            mate[v] = u
            unmatched.remove(v)
            unmatched_set.discard(v)
        leftovers.extend(unmatched)
    leftovers.extend(cores.singleton_cores)
    leftovers.extend(cores.non_core)
    return Matching(mate), sorted(leftovers)


def match_noncore(h: Hypergraph, m: Matching, pool: Sequence[int],
                  rng: random.Random,
                  ratio_band: Tuple[float, float] = RATIO_BAND) -> Matching:
    """Augment a matching over the leftover pool until compression suffices.

    Pool vertices are visited in random order; each unmatched one is
    paired with its most similar unmatched neighbour (a vertex sharing
    at least one hyperedge). Matching stops early once the projected
    compression ratio reaches the lower edge of ``ratio_band``; pair
    matching caps the ratio at 2 regardless.
    """
    n = h.num_vertices
    mate = list(m.mate)
    pairs = sum(1 for x in mate if x is not None) // 2
    min_ratio = ratio_band[0]

    def ratio_reached() -> bool:
        return n >= min_ratio * (n - pairs)

    if ratio_reached() or not pool:
        return Matching(mate)

    incident_weight = h.vertex_incident_weights()
    order = list(pool)
    rng.shuffle(order)
    weights = h.hyperedge_weight
    for u in order:
        if mate[u] is not None:
            continue
        shared: dict[int, int] = {}
        for e in h.pins_by_vertex[u]:
            w = weights[e]
            for x in h.pins_by_hyperedge[e]:
                if x != u and mate[x] is None:
                    shared[x] = shared.get(x, 0) + w
        if not shared:
            continue
        wu = incident_weight[u]
        best = None
        best_j = -1.0
        for x in sorted(shared):
            sw = shared[x]
            union = wu + incident_weight[x] - sw
            j = sw / union if union > 0 else 0.0
            if j > best_j:
                best_j = j
                best = x
        mate[u] = best
        mate[best] = u
        pairs += 1
        if ratio_reached():
            break
    return Matching(mate)


def contract(h: Hypergraph, m: Matching) -> LevelLink:
    """Merge mates into coarse vertices and clean up the hyperedge list.

    Coarse vertex weights are sums over the merged fine vertices; each
    hyperedge maps its pins through the coarse ids. Hyperedges that
    shrink to a single pin are dropped (they can never be cut) and
    hyperedges with identical coarse pin sets fuse into one whose weight
    is the sum of the group. Grouping keys on the pin tuple itself, so
    equal hashes are always confirmed by a full pin comparison.
    """
    coarse_id = m.coarse_id
    nc = m.num_coarse
    vertex_weight = [0] * nc
    for v, w in enumerate(h.vertex_weight):
        vertex_weight[coarse_id[v]] += w

    groups: dict[Tuple[int, ...], int] = {}
    pins_out: List[List[int]] = []
    weight_out: List[int] = []
    hits: List[int] = []
    dropped = 0
    for e, pins in enumerate(h.pins_by_hyperedge):
        mapped = sorted({coarse_id[v] for v in pins})
        if len(mapped) <= 1:
            dropped += 1
            continue
        key = tuple(mapped)
        idx = groups.get(key)
        if idx is None:
            groups[key] = len(pins_out)
            pins_out.append(mapped)
            weight_out.append(h.hyperedge_weight[e])
            hits.append(1)
        else:
            weight_out[idx] += h.hyperedge_weight[e]
            hits[idx] += 1
    merged_groups = sum(1 for c in hits if c > 1)
    coarse = Hypergraph(nc, pins_out, vertex_weight=vertex_weight,
                        hyperedge_weight=weight_out)
    return LevelLink(h, coarse, list(coarse_id), dropped, merged_groups)


def cc_edge(h: Hypergraph, e: int) -> float:
    """Clustering coefficient of one hyperedge.

    For a hyperedge of size above one: the overlap-weighted sum over all
    other intersecting hyperedges, normalised by the total weight of the
    other hyperedges incident to its pins (counted once per shared pin).
    Unit-size hyperedges and hyperedges with an isolated neighbourhood
    score 0. Both sums exclude the hyperedge itself, which makes the
    value invariant under uniform scaling of all hyperedge weights.
    """
    if not 0 <= e < h.num_hyperedges:
        raise IndexError(f"hyperedge id {e} out of range")
    pins = h.pins_by_hyperedge[e]
    size = len(pins)
    if size <= 1:
        return 0.0
    weights = h.hyperedge_weight
    overlap: dict[int, int] = {}
    denom = 0
    for v in pins:
        for e2 in h.pins_by_vertex[v]:
            if e2 == e:
                continue
            overlap[e2] = overlap.get(e2, 0) + 1
            denom += weights[e2]
    if denom == 0:
        return 0.0
    numer = sum((cnt / (size - 1)) * weights[e2] for e2, cnt in overlap.items())
    return numer / denom


def cc_hypergraph(h: Hypergraph) -> float:
    """Average clustering coefficient over all hyperedges."""
    if h.num_hyperedges == 0:
        raise ValueError("clustering coefficient undefined without hyperedges")
    return sum(cc_edge(h, e) for e in range(h.num_hyperedges)) / h.num_hyperedges


def _clamp(s: float) -> float:
    lo, hi = THRESHOLD_CLAMP
    return min(max(s, lo), hi)


def initial_threshold(h: Hypergraph) -> ThresholdState:
    """Seed the similarity threshold with the hypergraph's CC, clamped."""
    return ThresholdState(_clamp(cc_hypergraph(h)), h.avg_degree())


def update_threshold(ts: ThresholdState, new_avg_degree: float) -> ThresholdState:
    """Rescale the threshold by the inverse change of the average degree.

    The threshold follows s' = s * (old degree / new degree), clamped to
    the working range; unchanged degrees leave it untouched.
    """
    if ts.avg_degree <= 0 or new_avg_degree <= 0:
        raise ValueError("average degrees must be positive")
    return ThresholdState(_clamp(ts.s * ts.avg_degree / new_avg_degree), new_avg_degree)
