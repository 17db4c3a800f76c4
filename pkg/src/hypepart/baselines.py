"""Streaming MinMax and uniform random partitioners used as baselines."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph


class StreamingMode(str, enum.Enum):
    EDGE_BALANCED = "eb"
    VERTEX_BALANCED = "nb"


@dataclass(frozen=True)
class StreamingParams:
    k: int
    slack: int = 100
    mode: StreamingMode = StreamingMode.VERTEX_BALANCED
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.slack < 0:
            raise ValueError(f"slack must be non-negative, got {self.slack}")
        object.__setattr__(self, "mode", StreamingMode(self.mode))


def minmax_partition(g: Hypergraph, params: StreamingParams) -> list[int]:
    """Greedy one-pass assignment over a shuffled vertex stream.

    Each vertex goes to the eligible partition that already touches the most
    of its hyperedges; ties go to the least loaded partition, then the lowest
    id. A partition is eligible while its load is at most the smallest load
    plus ``slack``. Load is the vertex count (vertex balanced) or the number
    of distinct hyperedges touching the partition (edge balanced).
    """
    k = params.k
    if g.n < k:
        raise ValueError(f"k={k} exceeds vertex count {g.n}")
    order = np.random.default_rng(params.seed).permutation(g.n).tolist()
    edge_balanced = params.mode is StreamingMode.EDGE_BALANCED
    slack = params.slack
    vertex_edges = g.vertex_edges
    parts_of_edge: list[set[int]] = [set() for _ in range(g.m)]
    load = [0] * k
    assignment = [-1] * g.n

    for v in order:
        incident = vertex_edges[v]
        overlap: dict[int, int] = {}
        for e in incident:
            for p in parts_of_edge[e]:
                overlap[p] = overlap.get(p, 0) + 1
        limit = min(load) + slack
        best = -1
        best_overlap = -1
        best_load = 0
        # every partition is scored, as in the original streaming scheme
        for p in range(k):
            lp = load[p]
            if lp > limit:
                continue
            ov = overlap.get(p, 0)
            if ov > best_overlap or (ov == best_overlap and lp < best_load):
                best, best_overlap, best_load = p, ov, lp
        assignment[v] = best
        if edge_balanced:
            for e in incident:
                touched = parts_of_edge[e]
                if best not in touched:
                    touched.add(best)
                    load[best] += 1
        else:
            load[best] += 1
            for e in incident:
                parts_of_edge[e].add(best)
    return assignment


def random_partition(g: Hypergraph, k: int, seed: int = 0) -> list[int]:
    """Shuffle the vertices and deal them round-robin into ``k`` partitions."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > g.n:
        raise ValueError(f"k={k} exceeds vertex count {g.n}")
    order = np.random.default_rng(seed).permutation(g.n)
    assignment = np.empty(g.n, dtype=np.int64)
    assignment[order] = np.arange(g.n) % k
    return assignment.tolist()
