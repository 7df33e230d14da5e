"""FM-style local refinement of bipartitions and level projection.

Two pass flavours are supported. A boundary pass (``bfm``) only makes
vertices that touch a cut hyperedge eligible to move, growing the
eligible set as the boundary moves. An early-exit pass (``fm-ee``)
starts with every vertex eligible and aborts once a configurable number
of consecutive moves fails to produce a new best state. Both flavours
move the maximum-gain admissible vertex, lock it, update neighbour gains
incrementally and finally roll back to the best state seen, preferring
balanced states and lower cost in that order. A move is admissible when
the resulting part-0 weight stays inside the balance window widened by
one maximum vertex weight (single moves must stay possible on coarse
levels where vertices are heavy), or when it strictly reduces the
balance violation; moves that would empty a part are never admissible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .coarsen import LevelLink
from .model import BalanceWindow, Hypergraph, Partition


@dataclass
class FmConfig:
    mode: str = "bfm"            # "bfm" or "fm-ee"
    max_passes: int = 2
    early_exit_window: int = 50  # fm-ee only
    epsilon: float = 0.02


def project(p_coarse: Partition, link: LevelLink) -> Partition:
    """Map a coarse partition back to the fine hypergraph of a level."""
    if len(p_coarse.assignment) != link.coarse.num_vertices:
        raise ValueError("partition does not match the coarse hypergraph of this link")
    assignment = [p_coarse.assignment[c] for c in link.coarse_id]
    return Partition.from_assignment(link.fine, p_coarse.k, assignment)


class _FmState:
    """Bookkeeping for one FM pass: pin counts, gains, buckets, locks."""

    def __init__(self, h: Hypergraph, p: Partition, window: BalanceWindow,
                 boundary_only: bool):
        self.h = h
        self.p = p
        self.window = window
        assignment = p.assignment
        n = h.num_vertices

        count0: List[int] = []
        cost = 0
        for e, pins in enumerate(h.pins_by_hyperedge):
            c0 = sum(1 for v in pins if assignment[v] == 0)
            count0.append(c0)
            if 0 < c0 < len(pins):
                cost += h.hyperedge_weight[e]
        self.count0 = count0
        self.cost = cost

        gains = [0] * n
        for e, pins in enumerate(h.pins_by_hyperedge):
            w = h.hyperedge_weight[e]
            c0 = count0[e]
            c1 = len(pins) - c0
            for v in pins:
                if assignment[v] == 0:
                    gains[v] += w * ((1 if c1 > 0 else 0) - (1 if c0 > 1 else 0))
                else:
                    gains[v] += w * ((1 if c0 > 0 else 0) - (1 if c1 > 1 else 0))
        self.gains = gains

        self.locked = [False] * n
        self.in_struct = [False] * n
        # Buckets are keyed (gain, source part) so selection can take the
        # lowest-id candidate of a bucket with one C-level min() call.
        self.buckets: dict[Tuple[int, int], set] = {}
        if boundary_only:
            active = set()
            for e, pins in enumerate(h.pins_by_hyperedge):
                if 0 < count0[e] < len(pins):
                    active.update(pins)
            eligible = sorted(active)
        else:
            eligible = range(n)
        for v in eligible:
            self._bucket_add(v)

        sizes = [0, 0]
        for part in assignment:
            sizes[part] += 1
        self.part_size = sizes

        wmax = h.max_vertex_weight()
        self.lo_soft = min(window.lower, window.target - wmax)
        self.hi_soft = max(window.upper, window.target + wmax)

    def _bucket_add(self, v: int) -> None:
        if self.in_struct[v] or self.locked[v]:
            return
        self.in_struct[v] = True
        key = (self.gains[v], self.p.assignment[v])
        self.buckets.setdefault(key, set()).add(v)

    def _bucket_remove(self, v: int) -> None:
        if not self.in_struct[v]:
            return
        self.in_struct[v] = False
        key = (self.gains[v], self.p.assignment[v])
        bucket = self.buckets.get(key)
        if bucket is not None:
            bucket.discard(v)
            if not bucket:
                del self.buckets[key]

    def _adjust_gain(self, v: int, delta: int) -> None:
        if self.locked[v]:
            return
        if self.in_struct[v]:
            old_key = (self.gains[v], self.p.assignment[v])
            bucket = self.buckets[old_key]
            bucket.discard(v)
            if not bucket:
                del self.buckets[old_key]
            self.gains[v] += delta
            new_key = (self.gains[v], self.p.assignment[v])
            self.buckets.setdefault(new_key, set()).add(v)
        else:
            self.gains[v] += delta

    def admissible(self, v: int) -> bool:
        a = self.p.assignment[v]
        if self.part_size[a] <= 1:
            return False
        w = self.h.vertex_weight[v]
        w0 = self.p.part_weight[0]
        w0_after = w0 - w if a == 0 else w0 + w
        if self.lo_soft - 1e-9 <= w0_after <= self.hi_soft + 1e-9:
            return True
        return self.window.violation(w0_after) < self.window.violation(w0) - 1e-12

    def _bucket_candidate(self, key: Tuple[int, int]) -> Optional[int]:
        """Lowest-id admissible vertex of one bucket.

        The min() fast path covers the common case; the scan only runs
        when the minimum itself is blocked, which happens on coarse
        levels where vertex weights differ."""
        bucket = self.buckets.get(key)
        if not bucket:
            return None
        v = min(bucket)
        if self.admissible(v):
            return v
        best = None
        for u in bucket:
            if (best is None or u < best) and u != v and self.admissible(u):
                best = u
        return best

    def select(self) -> Optional[int]:
        """Max-gain admissible vertex; ties prefer the move into the part
        that sits further below its target, then the lower vertex id."""
        total = self.h.total_vertex_weight
        deficits = (self.window.target - self.p.part_weight[0],
                    (total - self.window.target) - self.p.part_weight[1])
        gains_desc = sorted({gain for gain, _ in self.buckets}, reverse=True)
        for gain in gains_desc:
            cand0 = self._bucket_candidate((gain, 0))   # would move into part 1
            cand1 = self._bucket_candidate((gain, 1))   # would move into part 0
            if cand0 is None and cand1 is None:
                continue
            if cand1 is None:
                return cand0
            if cand0 is None:
                return cand1
            key0 = (0 if deficits[1] >= deficits[0] else 1, cand0)
            key1 = (0 if deficits[0] >= deficits[1] else 1, cand1)
            return cand0 if key0 <= key1 else cand1
        return None

    def apply_move(self, v: int) -> None:
        h = self.h
        p = self.p
        assignment = p.assignment
        a = assignment[v]
        b = 1 - a
        # Unhook v first: bucket keys carry the source part, which is
        # about to change, and a locked vertex takes no gain updates.
        self._bucket_remove(v)
        self.locked[v] = True
        for e in h.pins_by_vertex[v]:
            pins = h.pins_by_hyperedge[e]
            w = h.hyperedge_weight[e]
            size = len(pins)
            c0 = self.count0[e]
            c_from = c0 if a == 0 else size - c0
            c_to = size - c_from
            was_cut = c_to > 0
            # Standard FM gain updates around the move of v (still in a).
            if c_to == 0:
                for u in pins:
                    if u != v:
                        self._adjust_gain(u, w)
            elif c_to == 1:
                for u in pins:
                    if u != v and assignment[u] == b:
                        self._adjust_gain(u, -w)
                        break
            self.count0[e] = c0 - 1 if a == 0 else c0 + 1
            c_from -= 1
            c_to += 1
            now_cut = c_from > 0
            if now_cut != was_cut:
                self.cost += w if now_cut else -w
            if now_cut and not was_cut:
                # Edge entered the boundary: make its pins eligible.
                for u in pins:
                    if u != v:
                        self._bucket_add(u)
            if c_from == 0:
                for u in pins:
                    if u != v:
                        self._adjust_gain(u, -w)
            elif c_from == 1:
                for u in pins:
                    if u != v and assignment[u] == a:
                        self._adjust_gain(u, w)
                        break
        weight = h.vertex_weight[v]
        assignment[v] = b
        p.part_weight[a] -= weight
        p.part_weight[b] += weight
        self.part_size[a] -= 1
        self.part_size[b] += 1

    def recompute_gains(self) -> List[int]:
        """From-scratch gains for the current assignment (audit support)."""
        h = self.h
        assignment = self.p.assignment
        gains = [0] * h.num_vertices
        for e, pins in enumerate(h.pins_by_hyperedge):
            w = h.hyperedge_weight[e]
            c0 = sum(1 for v in pins if assignment[v] == 0)
            c1 = len(pins) - c0
            for v in pins:
                if assignment[v] == 0:
                    gains[v] += w * ((1 if c1 > 0 else 0) - (1 if c0 > 1 else 0))
                else:
                    gains[v] += w * ((1 if c0 > 0 else 0) - (1 if c1 > 1 else 0))
        return gains


def _state_key(violation: float, cost: int) -> Tuple[int, float, int]:
    if violation <= 1e-9:
        return (0, float(cost), 0)
    return (1, violation, cost)


def fm_pass(h: Hypergraph, p: Partition, cfg: FmConfig,
            window: Optional[BalanceWindow] = None,
            audit: bool = False) -> Tuple[Partition, int]:
    """Run one FM pass in place and return ``(p, cost_delta)``.

    The delta is never positive when the input satisfies the balance
    window; from an unbalanced input the pass prioritises reducing the
    violation, in which case the cost may rise.
    """
    if p.k != 2:
        raise ValueError("fm_pass refines bipartitions only")
    if cfg.mode not in ("bfm", "fm-ee"):
        raise ValueError(f"unknown FM mode {cfg.mode!r}")
    if window is None:
        window = BalanceWindow.symmetric(h.total_vertex_weight, cfg.epsilon)

    state = _FmState(h, p, window, boundary_only=(cfg.mode == "bfm"))
    initial_cost = state.cost
    best_key = _state_key(window.violation(p.part_weight[0]), state.cost)
    best_cost = state.cost
    best_index = 0
    history: List[int] = []
    stall = 0

    while True:
        v = state.select()
        if v is None:
            break
        state.apply_move(v)
        history.append(v)
        if audit:
            # Gains of locked vertices are not maintained; compare the rest.
            fresh = state.recompute_gains()
            for u in range(h.num_vertices):
                if not state.locked[u]:
                    assert state.gains[u] == fresh[u], "incremental gain drift"
        key = _state_key(window.violation(p.part_weight[0]), state.cost)
        if key < best_key:
            best_key = key
            best_cost = state.cost
            best_index = len(history)
            stall = 0
        else:
            stall += 1
            if cfg.mode == "fm-ee" and stall >= cfg.early_exit_window:
                break

    # Roll back to the best prefix.
    for v in reversed(history[best_index:]):
        b = p.assignment[v]
        a = 1 - b
        w = h.vertex_weight[v]
        p.assignment[v] = a
        p.part_weight[b] -= w
        p.part_weight[a] += w
    return p, best_cost - initial_cost


def refine_bipartition(h: Hypergraph, p: Partition, cfg: FmConfig,
                       window: Optional[BalanceWindow] = None,
                       max_passes: Optional[int] = None) -> int:
    """Run FM passes until a pass changes nothing; return the total delta."""
    if window is None:
        window = BalanceWindow.symmetric(h.total_vertex_weight, cfg.epsilon)
    passes = max_passes if max_passes is not None else cfg.max_passes
    total = 0
    for _ in range(passes):
        violation_before = window.violation(p.part_weight[0])
        _, delta = fm_pass(h, p, cfg, window)
        total += delta
        if delta == 0 and window.violation(p.part_weight[0]) == violation_before:
            break
    return total
