"""Candidate bipartitions of the coarsest hypergraph.

Three generators are available: random assignment (each vertex goes to a
random part that still has capacity), linear assignment (vertices fill a
random starting part up to its target weight, then the other part) and
an FM-developed candidate grown from a one-vertex seed. The best
balanced candidate by cut cost wins; when no candidate is balanced the
least unbalanced one is returned for refinement to repair.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from .model import (BalanceWindow, Hypergraph, InfeasibleBalanceError,
                    Partition, partition_cost)
from .refine import FmConfig, refine_bipartition

INIT_METHODS = ("random", "linear", "fm-seeded")


def _ensure_both_parts(h: Hypergraph, assignment: List[int]) -> None:
    sizes = [0, 0]
    for part in assignment:
        sizes[part] += 1
    for part in (0, 1):
        if sizes[part] == 0:
            donor = 1 - part
            for v, a in enumerate(assignment):
                if a == donor:
                    assignment[v] = part
                    break


def generate_candidate(h: Hypergraph, method: str, rng: random.Random,
                       window: Optional[BalanceWindow] = None,
                       epsilon: float = 0.02,
                       fm: Optional[FmConfig] = None) -> Partition:
    """Produce one 2-way candidate with the given method."""
    n = h.num_vertices
    if n < 2:
        raise InfeasibleBalanceError("cannot bipartition fewer than two vertices")
    if method not in INIT_METHODS:
        raise ValueError(f"unknown init method {method!r}; expected one of {INIT_METHODS}")
    if window is None:
        window = BalanceWindow.symmetric(h.total_vertex_weight, epsilon)
    total = h.total_vertex_weight
    if max(h.vertex_weight) > min(window.upper, total - window.lower) + 1e-9:
        raise InfeasibleBalanceError("a single vertex exceeds the part weight bound")

    if method == "fm-seeded":
        seed_vertex = rng.randrange(n)
        assignment = [0] * n
        assignment[seed_vertex] = 1
        p = Partition.from_assignment(h, 2, assignment)
        cfg = fm if fm is not None else FmConfig(mode="fm-ee", epsilon=epsilon)
        # Passes run until one changes nothing; the cap is a safety net.
        refine_bipartition(h, p, cfg, window=window, max_passes=12)
        _ensure_both_parts(h, p.assignment)
        return Partition.from_assignment(h, 2, p.assignment)

    assignment = [0] * n
    # Upper capacity per part; respecting both caps keeps the final
    # weights inside the window because the caps sum to more than the
    # total by construction.
    cap = (window.upper, total - window.lower)
    if method == "random":
        order = list(range(n))
        rng.shuffle(order)
        weights = [0, 0]
        for v in order:
            w = h.vertex_weight[v]
            feasible = [part for part in (0, 1) if weights[part] + w <= cap[part] + 1e-9]
            if len(feasible) == 2:
                part = feasible[rng.randrange(2)]
            elif feasible:
                part = feasible[0]
            else:
                part = 0 if cap[0] - weights[0] >= cap[1] - weights[1] else 1
            assignment[v] = part
            weights[part] += w
    else:  # linear
        start = rng.randrange(2)
        target = window.target if start == 0 else total - window.target
        filled = 0
        part = start
        for v in range(n):
            w = h.vertex_weight[v]
            if part == start and filled + w > target + 1e-9:
                part = 1 - start
            assignment[v] = part
            if part == start:
                filled += w

    _ensure_both_parts(h, assignment)
    return Partition.from_assignment(h, 2, assignment)


def select_best(candidates: Sequence[Partition], h: Hypergraph,
                epsilon: float = 0.02,
                window: Optional[BalanceWindow] = None) -> Partition:
    """Pick the cheapest balanced candidate, or the least unbalanced one.

    Among candidates inside the balance window the minimum-cost one wins
    (ties go to the earliest candidate); if none is balanced, the one
    with the smallest violation wins and refinement is expected to
    repair the balance.
    """
    if not candidates:
        raise ValueError("select_best needs at least one candidate")
    if window is None:
        window = BalanceWindow.symmetric(h.total_vertex_weight, epsilon)
    best = None
    best_key = None
    for index, p in enumerate(candidates):
        violation = window.violation(p.part_weight[0])
        if violation == 0.0:
            key = (0, partition_cost(h, p), index)
        else:
            key = (1, violation, index)
        if best_key is None or key < best_key:
            best_key = key
            best = p
    return best
