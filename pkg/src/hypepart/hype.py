"""HYPE: neighborhood-expansion hypergraph partitioning.

Partitions are grown one after another. Each partition starts from a random
seed vertex and alternates two steps until it reaches its capacity:

* ``update_fringe`` pulls up to ``r`` candidate vertices from the smallest
  hyperedges touching the core, scores them by their number of external
  neighbors and keeps the ``s`` best-scored vertices as the fringe;
* ``update_core`` moves the best fringe vertex into the core for good.
"""

from __future__ import annotations

import enum
import heapq
import logging
import time
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .hypergraph import Hypergraph, flip
from .metrics import MetricsReport, evaluate

log = logging.getLogger(__name__)

UNASSIGNED = -1


class BalanceMode(str, enum.Enum):
    VERTEX_COUNT = "vertex"
    WEIGHTED_PINS = "weighted"
    FLIP_EDGE_COUNT = "flip"


@dataclass(frozen=True)
class HypeParams:
    k: int
    s: int = 10
    r: int = 2
    balance_mode: BalanceMode = BalanceMode.VERTEX_COUNT
    cache_enabled: bool = True
    seed: int = 0
    # Experimental: also treat neighbors already in the core as non-external.
    subtract_core: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.s < 1:
            raise ValueError(f"fringe size s must be at least 1, got {self.s}")
        if self.r < 1:
            raise ValueError(f"candidate count r must be at least 1, got {self.r}")
        object.__setattr__(self, "balance_mode", BalanceMode(self.balance_mode))


def external_neighbors_score(g: Hypergraph, v: int, fringe: Iterable[int]) -> int:
    """``|N(v) \\ fringe|``: neighbors of ``v`` that are not in the fringe."""
    mine = set(g.vertex_edges[v])
    vertex_edges = g.vertex_edges
    inside = sum(1 for f in set(fringe) if f != v and not mine.isdisjoint(vertex_edges[f]))
    return g.neighbor_count(v) - inside


def vertex_capacities(n: int, k: int) -> list[int]:
    """Sizes differing by at most one; the first ``n mod k`` partitions get the extra vertex."""
    base, extra = divmod(n, k)
    return [base + 1 if i < extra else base for i in range(k)]


def capacity(g: Hypergraph, params: HypeParams, i: int) -> float:
    """Growth target of partition ``i``.

    Vertex count for ``VERTEX_COUNT``; hyperedge count (vertices of the
    flipped graph) for ``FLIP_EDGE_COUNT``; a weight threshold of
    ``(n + m) / k`` for ``WEIGHTED_PINS``, where a vertex weighs
    ``1 + degree``.
    """
    if not 0 <= i < params.k:
        raise IndexError(f"partition {i} out of range [0, {params.k})")
    mode = params.balance_mode
    if mode is BalanceMode.VERTEX_COUNT:
        return vertex_capacities(g.n, params.k)[i]
    if mode is BalanceMode.FLIP_EDGE_COUNT:
        return vertex_capacities(g.m, params.k)[i]
    return (g.n + g.m) / params.k


class ExpansionState:
    """Mutable bookkeeping for one run of the expansion over ``g``.

    Attributes:
        assignment: partition id per vertex, ``UNASSIGNED`` until it joins a core.
        partition: index of the partition currently being grown.
        core_size, core_weight: size and accumulated ``1 + degree`` weight of
            the current core.
        fringe: ``(score, vertex)`` pairs, ascending; at most ``s`` entries.
        cache: vertex -> score; cleared when a new partition starts.
    """

    def __init__(self, g: Hypergraph, params: HypeParams, rng: np.random.Generator | None = None):
        self.g = g
        self.params = params
        self.rng = rng if rng is not None else np.random.default_rng(params.seed)
        n, m = g.n, g.m
        self.assignment = [UNASSIGNED] * n
        self.partition = -1
        self.core_size = 0
        self.core_weight = 0
        self.fringe: list[tuple[int, int]] = []
        self.cache: dict[int, int] = {}
        self.score_computations = 0

        self._in_fringe = bytearray(n)
        # unassigned vertices (universe plus fringe), swap-removed on assignment
        self._pool = list(range(n))
        self._pool_pos = list(range(n))
        # per-edge counters used to skip exhausted hyperedges in O(1)
        self._assigned_in_edge = [0] * m
        self._fringe_in_edge: dict[int, set[int]] = {}
        # members before the cursor are known to be assigned or in the fringe
        self._cursor = [0] * m
        # traversal heap of core-incident edges, keyed by rank in size order
        order = g.edges_by_size_ascending
        self._edge_order = order
        rank = [0] * m
        for pos, e in enumerate(order):
            rank[e] = pos
        self._rank = rank
        self._active_in = [-1] * m
        self._heap: list[int] = []

    # -- queries ---------------------------------------------------------

    @property
    def universe_size(self) -> int:
        """Vertices in no core and not in the fringe."""
        return len(self._pool) - len(self.fringe)

    def unassigned_count(self) -> int:
        return len(self._pool)

    def in_fringe(self, v: int) -> bool:
        return bool(self._in_fringe[v])

    def core_incident_edges(self) -> list[int]:
        """Hyperedges touched by the current core (the traversal set)."""
        return [e for e, p in enumerate(self._active_in) if p == self.partition]

    def score(self, v: int) -> int:
        """External neighbors score of ``v`` against the current fringe."""
        self.score_computations += 1
        g = self.g
        if self.params.subtract_core:
            part = self.partition
            assignment = self.assignment
            in_fringe = self._in_fringe
            neigh = set()
            for e in g.vertex_edges[v]:
                neigh.update(g.edge_members[e])
            neigh.discard(v)
            return sum(1 for u in neigh if not in_fringe[u] and assignment[u] != part)
        fringe_in_edge = self._fringe_in_edge
        shared: set[int] | None = None
        for e in g.vertex_edges[v]:
            members = fringe_in_edge.get(e)
            if members:
                if shared is None:
                    shared = set(members)
                else:
                    shared |= members
        inside = 0
        if shared:
            inside = len(shared) - (v in shared)
        return g.neighbor_count(v) - inside

    # -- transitions -----------------------------------------------------

    def begin_partition(self, i: int) -> int:
        """Release the fringe, clear the cache and seed partition ``i`` with a random vertex."""
        for _, v in self.fringe:
            self._remove_from_fringe(v)
        self.fringe = []
        self.cache.clear()
        self._heap = []
        self.partition = i
        self.core_size = 0
        self.core_weight = 0
        seed = self.random_universe_vertex()
        self._assign(seed)
        return seed

    def random_universe_vertex(self) -> int:
        """Uniform draw from the unassigned vertices outside the fringe."""
        pool = self._pool
        if len(self.fringe) == 0:
            return pool[int(self.rng.integers(len(pool)))]
        # only reached when a caller asks with a non-empty fringe
        universe = [v for v in pool if not self._in_fringe[v]]
        return universe[int(self.rng.integers(len(universe)))]

    def select_candidates(self) -> list[int]:
        """Up to ``r`` legal vertices from core-incident hyperedges, smallest edges first."""
        r = self.params.r
        g = self.g
        edge_members = g.edge_members
        order = self._edge_order
        assigned_in_edge = self._assigned_in_edge
        fringe_in_edge = self._fringe_in_edge
        cursor = self._cursor
        assignment = self.assignment
        in_fringe = self._in_fringe
        heap = self._heap

        cands: list[int] = []
        aside: list[int] = []
        while heap and len(cands) < r:
            rank = heapq.heappop(heap)
            e = order[rank]
            members = edge_members[e]
            size = len(members)
            assigned = assigned_in_edge[e]
            if assigned == size:
                continue  # every member sits in some core: never legal again
            aside.append(rank)
            fe = fringe_in_edge.get(e)
            if size - assigned - (len(fe) if fe else 0) <= 0:
                continue
            c = cursor[e]
            while c < size and (assignment[members[c]] >= 0 or in_fringe[members[c]]):
                c += 1
            cursor[e] = c
            for j in range(c, size):
                u = members[j]
                if assignment[u] < 0 and not in_fringe[u] and u not in cands:
                    cands.append(u)
                    if len(cands) == r:
                        break
        for rank in aside:
            heapq.heappush(heap, rank)
        return cands

    def update_fringe(self) -> list[int]:
        """One fringe update; returns the candidates that were considered."""
        params = self.params
        cache = self.cache
        cands = self.select_candidates()
        if params.cache_enabled:
            for v in cands:
                if v not in cache:
                    cache[v] = self.score(v)
        else:
            # scores against the fringe as it stands before the merge
            fresh = {v: self.score(v) for v in [*(v for _, v in self.fringe), *cands]}
            cache.update(fresh)
        merged = sorted([(cache[v], v) for _, v in self.fringe] + [(cache[v], v) for v in cands])
        kept = merged[: params.s]
        for _, v in merged[params.s :]:
            if self._in_fringe[v]:
                self._remove_from_fringe(v)
        for _, v in kept:
            if not self._in_fringe[v]:
                self._add_to_fringe(v)
        self.fringe = kept
        if not kept and self.universe_size > 0:
            v = self.random_universe_vertex()
            if v not in cache or not params.cache_enabled:
                cache[v] = self.score(v)
            self._add_to_fringe(v)
            self.fringe = [(cache[v], v)]
        return cands

    def update_core(self) -> int:
        """Move the fringe vertex with the smallest cached score into the core."""
        if not self.fringe:
            raise RuntimeError("update_core called with an empty fringe")
        _, v = self.fringe.pop(0)  # sorted by (score, id)
        self._remove_from_fringe(v, evicted=False)
        self._assign(v)
        return v

    def step(self) -> int:
        self.update_fringe()
        return self.update_core()

    def assign_rest(self, i: int) -> None:
        """Put every unassigned vertex into partition ``i``."""
        for _, v in self.fringe:
            self._remove_from_fringe(v, evicted=False)
        self.fringe = []
        self.partition = i
        for v in list(self._pool):
            self._assign(v)

    def check_invariants(self) -> None:
        """Expensive consistency check used by tests and debug runs."""
        s = self.params.s
        fringe_vertices = [v for _, v in self.fringe]
        assert len(self.fringe) <= s, "fringe exceeds s"
        assert len(set(fringe_vertices)) == len(fringe_vertices), "duplicate fringe entry"
        assert self.fringe == sorted(self.fringe), "fringe not sorted"
        for score, v in self.fringe:
            assert self.assignment[v] == UNASSIGNED, "fringe vertex already in a core"
            assert self._in_fringe[v]
            assert self.cache.get(v) == score, "fringe entry without matching cache entry"
        assert sum(self._in_fringe) == len(self.fringe)
        unassigned = {v for v, p in enumerate(self.assignment) if p == UNASSIGNED}
        assert unassigned == set(self._pool)
        universe = unassigned - set(fringe_vertices)
        assert len(universe) == self.universe_size
        assigned = self.g.n - len(unassigned)
        assert assigned + len(fringe_vertices) + len(universe) == self.g.n
        for e, members in enumerate(self.g.edge_members):
            assert self._assigned_in_edge[e] == sum(
                1 for u in members if self.assignment[u] != UNASSIGNED
            )
            fe = self._fringe_in_edge.get(e, set())
            assert fe == {u for u in members if self._in_fringe[u]}
            assert all(
                self.assignment[u] != UNASSIGNED or self._in_fringe[u]
                for u in members[: self._cursor[e]]
            )

    # -- internals -------------------------------------------------------

    def _assign(self, v: int) -> None:
        i = self.partition
        self.assignment[v] = i
        pool, pos = self._pool, self._pool_pos
        j = pos[v]
        last = pool[-1]
        pool[j] = last
        pos[last] = j
        pool.pop()
        self.core_size += 1
        incident = self.g.vertex_edges[v]
        self.core_weight += 1 + len(incident)
        assigned_in_edge = self._assigned_in_edge
        active_in = self._active_in
        rank = self._rank
        edge_members = self.g.edge_members
        for e in incident:
            assigned_in_edge[e] += 1
            if active_in[e] != i:
                active_in[e] = i
                if assigned_in_edge[e] < len(edge_members[e]):
                    heapq.heappush(self._heap, rank[e])

    def _add_to_fringe(self, v: int) -> None:
        self._in_fringe[v] = 1
        fringe_in_edge = self._fringe_in_edge
        for e in self.g.vertex_edges[v]:
            members = fringe_in_edge.get(e)
            if members is None:
                fringe_in_edge[e] = {v}
            else:
                members.add(v)

    def _remove_from_fringe(self, v: int, evicted: bool = True) -> None:
        self._in_fringe[v] = 0
        fringe_in_edge = self._fringe_in_edge
        cursor = self._cursor
        edge_members = self.g.edge_members
        for e in self.g.vertex_edges[v]:
            members = fringe_in_edge[e]
            members.discard(v)
            if not members:
                del fringe_in_edge[e]
            if evicted:
                # v is legal again; make sure the cursor does not skip it
                p = bisect_left(edge_members[e], v)
                if p < cursor[e]:
                    cursor[e] = p


def _grow(state: ExpansionState, g: Hypergraph, params: HypeParams) -> list[int]:
    k = params.k
    mode = params.balance_mode
    caps = vertex_capacities(g.n, k)
    threshold = (g.n + g.m) / k
    for i in range(k):
        if i == k - 1:
            state.assign_rest(i)
            break
        remaining_partitions = k - 1 - i
        state.begin_partition(i)
        if mode is BalanceMode.WEIGHTED_PINS:
            # keep at least one vertex back for each later partition
            while (
                state.core_weight < threshold
                and state.unassigned_count() > remaining_partitions
            ):
                state.step()
        else:
            cap = caps[i]
            while state.core_size < cap:
                state.step()
        log.debug("partition %d: %d vertices, weight %d", i, state.core_size, state.core_weight)
    return state.assignment


def partition(g: Hypergraph, params: HypeParams) -> tuple[list[int], MetricsReport]:
    """Run HYPE on ``g``.

    Returns the assignment and its metrics. With ``FLIP_EDGE_COUNT`` the
    expansion runs on the flipped hypergraph, so the assignment has one
    entry per original hyperedge and the metrics describe the flipped graph.
    """
    target = flip(g) if params.balance_mode is BalanceMode.FLIP_EDGE_COUNT else g
    if params.k > target.n:
        raise ValueError(f"k={params.k} exceeds the {target.n} items to partition")
    # precomputed outside the timed region, like file I/O
    target.edges_by_size_ascending
    start = time.perf_counter()
    state = ExpansionState(target, params)
    assignment = _grow(state, target, params)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    log.info(
        "hype k=%d s=%d r=%d cache=%s: %.1f ms, %d score computations",
        params.k, params.s, params.r, params.cache_enabled, runtime_ms, state.score_computations,
    )
    return assignment, evaluate(target, assignment, params.k, runtime_ms)
