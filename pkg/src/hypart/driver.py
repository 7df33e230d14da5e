"""Multilevel V-cycle and recursive bisection to k parts.

One bisection coarsens the hypergraph level by level (hyperedge
clustering, core extraction, matching, contraction) until it is small
enough, partitions the coarsest level with a set of candidate
generators, then walks back up projecting and refining. k-way
partitioning splits k into ceil(k/2) and floor(k/2), bisects with target
weights in that ratio and recurses on the two vertex-induced
sub-hypergraphs. Balance bounds at every recursion node are anchored to
the global average part weight, so the leaf parts satisfy the balance
constraint directly.

All randomness flows from one seeded generator per run, which makes a
run a deterministic function of (input, config, seed).
"""

from __future__ import annotations

import math
import random
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple, Union

from .coarsen import (LevelLink, contract, initial_threshold, match_in_cores,
                      match_noncore, update_threshold, ThresholdState)
from .initpart import INIT_METHODS, generate_candidate, select_best
from .model import (BalanceWindow, Hypergraph, InfeasibleBalanceError,
                    Partition, max_imbalance, partition_cost, validate)
from .refine import FmConfig, refine_bipartition, project
from .roughset import build_edge_partitions, extract_cores

PHASE_KEYS = ("overall", "build", "recursion", "vcycle", "hcg", "matching",
              "coarsening", "initpart", "refinement")

# Coarsening stops when a level compresses by less than this factor.
STAGNATION_RATIO = 1.05


@dataclass
class PartitionConfig:
    k: int = 2
    epsilon: float = 0.02
    coarsest_size: int = 100
    similarity_threshold: Union[str, float] = "auto"   # "auto" uses the CC seed
    clustering_threshold: Union[str, float] = "auto"   # "auto" is 0 + unit-cluster removal
    edge_weights: str = "unit"                         # applied at ingestion
    fm: FmConfig = field(default_factory=FmConfig)
    init_repeats: int = 4
    seed: int = 1
    runs: int = 1
    # Number of finest levels that get an extra early-exit FM sweep on
    # top of the boundary sweep run at every level.
    fmee_finest_levels: int = 2

    def validate(self) -> None:
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.coarsest_size < 2:
            raise ValueError("coarsest_size must be at least 2")
        if self.similarity_threshold != "auto" and not 0.0 < float(self.similarity_threshold) < 1.0:
            raise ValueError("fixed similarity threshold must lie in (0, 1)")
        if self.clustering_threshold != "auto" and not 0.0 <= float(self.clustering_threshold) <= 1.0:
            raise ValueError("fixed clustering threshold must lie in [0, 1]")
        if self.init_repeats < 1:
            raise ValueError("init_repeats must be at least 1")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")


@dataclass
class RunStats:
    """Wall times per phase plus the headline result of one run."""

    phases: Dict[str, float]
    cost: int
    imbalance: float
    bisections: List[dict]
    seed: int

    def to_dict(self) -> dict:
        out = dict(self.phases)
        out["cost"] = self.cost
        out["imbalance"] = self.imbalance
        out["bisections"] = self.bisections
        out["seed"] = self.seed
        return out


class PhaseTimer:
    def __init__(self):
        self.times = {key: 0.0 for key in PHASE_KEYS}

    @contextmanager
    def phase(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.times[name] += time.perf_counter() - start


def _resolve_thresholds(cfg: PartitionConfig) -> Tuple[Optional[float], float, bool]:
    """Fixed similarity threshold (or None for auto), clustering threshold
    and whether unit clusters are dropped."""
    sim = None if cfg.similarity_threshold == "auto" else float(cfg.similarity_threshold)
    if cfg.clustering_threshold == "auto":
        return sim, 0.0, True
    return sim, float(cfg.clustering_threshold), False


def _bipartition_window(h: Hypergraph, cfg: PartitionConfig, rng: random.Random,
                        window: BalanceWindow, timer: PhaseTimer) -> Tuple[Partition, dict]:
    """One full V-cycle on ``h`` targeting the given balance window."""
    if h.num_vertices < 2:
        raise InfeasibleBalanceError("cannot bipartition fewer than two vertices")
    sim_fixed, clus_c, drop_unit = _resolve_thresholds(cfg)

    levels: List[LevelLink] = []
    ratios: List[float] = []
    thresholds: List[float] = []
    current = h
    ts: Optional[ThresholdState] = None

    while current.num_vertices > cfg.coarsest_size and current.num_hyperedges > 0:
        if ts is None:
            with timer.phase("hcg"):
                if sim_fixed is not None:
                    ts = ThresholdState(sim_fixed, current.avg_degree())
                else:
                    ts = initial_threshold(current)
        with timer.phase("hcg"):
            ep = build_edge_partitions(current, ts.s)
        with timer.phase("matching"):
            cores = extract_cores(current, ep, clus_c, drop_unit_clusters=drop_unit)
            matching, leftovers = match_in_cores(current, cores, rng)
            matching = match_noncore(current, matching, leftovers, rng)
        if matching.num_coarse == current.num_vertices:
            break
        with timer.phase("coarsening"):
            link = contract(current, matching)
        ratio = current.num_vertices / link.coarse.num_vertices
        levels.append(link)
        ratios.append(ratio)
        thresholds.append(ts.s)
        current = link.coarse
        if ratio < STAGNATION_RATIO:
            break
        if sim_fixed is None:
            with timer.phase("vcycle"):
                new_degree = current.avg_degree()
                if new_degree > 0:
                    ts = update_threshold(ts, new_degree)

    with timer.phase("initpart"):
        candidates = []
        for method in INIT_METHODS:
            for _ in range(cfg.init_repeats):
                candidates.append(generate_candidate(
                    current, method, rng, window=window,
                    epsilon=cfg.epsilon, fm=_fm(cfg, "fm-ee")))
        p = select_best(candidates, current, window=window).copy()

    with timer.phase("refinement"):
        _refine_level(current, p, cfg, window, level_pos=len(levels))

    for pos in range(len(levels) - 1, -1, -1):
        link = levels[pos]
        with timer.phase("vcycle"):
            p = project(p, link)
        with timer.phase("refinement"):
            _refine_level(link.fine, p, cfg, window, level_pos=pos)

    if window.violation(p.part_weight[0]) > 0:
        # Balance repair: extra early-exit sweeps walk the partition
        # into the window when the projected one sits outside it.
        with timer.phase("refinement"):
            for _ in range(6):
                refine_bipartition(h, p, _fm(cfg, "fm-ee"), window=window, max_passes=1)
                if window.violation(p.part_weight[0]) == 0:
                    break
    if window.violation(p.part_weight[0]) > 0:
        raise InfeasibleBalanceError(
            f"no balanced bipartition found (part weights {p.part_weight})")

    info = {"levels": len(levels), "r": ratios, "s": thresholds,
            "cost": partition_cost(h, p)}
    return p, info


def _fm(cfg: PartitionConfig, mode: str) -> FmConfig:
    base = cfg.fm
    return FmConfig(mode=mode, max_passes=base.max_passes,
                    early_exit_window=base.early_exit_window, epsilon=cfg.epsilon)


def _refine_level(h: Hypergraph, p: Partition, cfg: PartitionConfig,
                  window: BalanceWindow, level_pos: int) -> None:
    refine_bipartition(h, p, _fm(cfg, "bfm"), window=window)
    if level_pos < cfg.fmee_finest_levels:
        refine_bipartition(h, p, _fm(cfg, "fm-ee"), window=window)


def bipartition(h: Hypergraph, cfg: PartitionConfig,
                rng: Optional[random.Random] = None) -> Tuple[Partition, dict]:
    """Bisect ``h`` under the symmetric balance constraint of ``cfg``."""
    cfg.validate()
    if rng is None:
        rng = random.Random(cfg.seed)
    timer = PhaseTimer()
    window = BalanceWindow.symmetric(h.total_vertex_weight, cfg.epsilon)
    return _bipartition_window(h, cfg, rng, window, timer)


def _quota_interval(k: int, avg_part: float, epsilon: float,
                    memo: Dict[int, Tuple[int, int]]) -> Tuple[int, int]:
    """Integer interval of side weights realisable by a quota of k parts.

    Part weights are integers, so a single part must weigh between
    ceil((1 - eps) * avg) and floor((1 + eps) * avg); a quota of k parts
    sums k such intervals, which stays a contiguous integer interval.
    Windows drawn from these intervals always contain a weight the
    descendants can realise, which real-valued windows do not guarantee
    (a node may be handed a weight whose child window contains no
    integer).
    """
    cached = memo.get(k)
    if cached is not None:
        return cached
    if k == 1:
        lo = math.ceil(avg_part * (1.0 - epsilon) - 1e-9)
        hi = math.floor(avg_part * (1.0 + epsilon) + 1e-9)
    else:
        lo1, hi1 = _quota_interval((k + 1) // 2, avg_part, epsilon, memo)
        lo2, hi2 = _quota_interval(k // 2, avg_part, epsilon, memo)
        lo, hi = lo1 + lo2, hi1 + hi2
    memo[k] = (lo, hi)
    return lo, hi


def induce_subhypergraph(h: Hypergraph, p: Partition, part: int) -> Tuple[Hypergraph, List[int]]:
    """Vertex-induced sub-hypergraph of one part, densely renumbered.

    Hyperedges are restricted to in-part pins and dropped when fewer
    than two pins remain; restricted hyperedges that become identical
    fuse with summed weights. Returns the sub-hypergraph and the map
    from its vertex ids back to the ids of ``h``.
    """
    back: List[int] = [v for v, a in enumerate(p.assignment) if a == part]
    local = {v: i for i, v in enumerate(back)}
    groups: dict[Tuple[int, ...], int] = {}
    pins_out: List[List[int]] = []
    weight_out: List[int] = []
    assignment = p.assignment
    for e, pins in enumerate(h.pins_by_hyperedge):
        restricted = [local[v] for v in pins if assignment[v] == part]
        if len(restricted) <= 1:
            continue
        key = tuple(restricted)
        idx = groups.get(key)
        if idx is None:
            groups[key] = len(pins_out)
            pins_out.append(restricted)
            weight_out.append(h.hyperedge_weight[e])
        else:
            weight_out[idx] += h.hyperedge_weight[e]
    vertex_weight = [h.vertex_weight[v] for v in back]
    sub = Hypergraph(len(back), pins_out, vertex_weight=vertex_weight,
                     hyperedge_weight=weight_out)
    return sub, back


def partition_kway(h: Hypergraph, cfg: PartitionConfig) -> Tuple[Partition, RunStats]:
    """Partition ``h`` into ``cfg.k`` parts by recursive bisection."""
    cfg.validate()
    timer = PhaseTimer()
    start = time.perf_counter()
    with timer.phase("build"):
        problems = validate(h)
        if problems:
            raise ValueError("invalid hypergraph: " + "; ".join(problems[:5]))
        if cfg.k > h.num_vertices:
            raise ValueError(f"k={cfg.k} exceeds the number of vertices {h.num_vertices}")
        avg_part = h.total_vertex_weight / cfg.k
        assignment = [0] * h.num_vertices

    rng = random.Random(cfg.seed)
    bisections: List[dict] = []
    intervals: Dict[int, Tuple[int, int]] = {}
    total_lo, total_hi = _quota_interval(cfg.k, avg_part, cfg.epsilon, intervals)
    if not total_lo <= h.total_vertex_weight <= total_hi:
        raise InfeasibleBalanceError(
            f"total weight {h.total_vertex_weight} cannot split into {cfg.k} "
            f"parts within tolerance {cfg.epsilon}")

    def recurse(sub: Hypergraph, back: List[int], k_node: int, base: int) -> None:
        if k_node == 1:
            for v in back:
                assignment[v] = base
            return
        k1 = (k_node + 1) // 2
        k2 = k_node // 2
        w_node = sub.total_vertex_weight
        lo1, hi1 = _quota_interval(k1, avg_part, cfg.epsilon, intervals)
        lo2, hi2 = _quota_interval(k2, avg_part, cfg.epsilon, intervals)
        lower = max(lo1, w_node - hi2)
        upper = min(hi1, w_node - lo2)
        if lower > upper:
            raise InfeasibleBalanceError(
                f"empty balance window for a {k1}:{k2} split of weight {w_node}")
        target = min(max(w_node * k1 / k_node, lower), upper)
        window = BalanceWindow(float(lower), float(upper), target)
        p, info = _bipartition_window(sub, cfg, rng, window, timer)
        bisections.append(info)
        with timer.phase("recursion"):
            sub0, back0 = induce_subhypergraph(sub, p, 0)
            sub1, back1 = induce_subhypergraph(sub, p, 1)
            back0 = [back[v] for v in back0]
            back1 = [back[v] for v in back1]
        recurse(sub0, back0, k1, base)
        recurse(sub1, back1, k2, base + k1)

    recurse(h, list(range(h.num_vertices)), cfg.k, 0)
    p = Partition.from_assignment(h, cfg.k, assignment)
    imbalance = max_imbalance(h, p)
    if imbalance > cfg.epsilon + 1e-9:
        raise InfeasibleBalanceError(
            f"final partition misses the balance constraint: {imbalance:.4f} > {cfg.epsilon}")
    if min(p.part_sizes()) == 0:
        raise InfeasibleBalanceError("final partition has an empty part")
    cost = partition_cost(h, p)
    timer.times["overall"] = time.perf_counter() - start
    stats = RunStats(phases=dict(timer.times), cost=cost, imbalance=imbalance,
                     bisections=bisections, seed=cfg.seed)
    return p, stats


def std_dev_percent(costs: List[int]) -> float:
    """Population standard deviation as a percentage of the mean cost."""
    if len(costs) < 2:
        return 0.0
    mean = statistics.fmean(costs)
    if mean == 0:
        return 0.0
    return statistics.pstdev(costs) / mean * 100.0


def run_many(h: Hypergraph, cfg: PartitionConfig) -> dict:
    """Run ``cfg.runs`` seeded repetitions and summarise them.

    Repetition i uses seed ``cfg.seed + i``. The summary carries the
    best run (lowest cost, earliest seed on ties), the mean cost and the
    population standard deviation as a percentage of the mean.
    """
    cfg.validate()
    results: List[Tuple[Partition, RunStats]] = []
    for i in range(cfg.runs):
        run_cfg = replace(cfg, seed=cfg.seed + i, runs=1)
        results.append(partition_kway(h, run_cfg))
    costs = [stats.cost for _, stats in results]
    best_index = min(range(len(results)), key=lambda i: (costs[i], i))
    best_partition, best_stats = results[best_index]
    return {
        "best_cost": costs[best_index],
        "mean_cost": statistics.fmean(costs),
        "std_dev_percent": std_dev_percent(costs),
        "best_partition": best_partition,
        "best_stats": best_stats,
        "runs": [stats for _, stats in results],
    }
