"""Partition quality and balance metrics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph

CSV_FIELDS = ("k1_cut", "hyperedge_cut", "soed", "imbalance", "runtime_ms")


@dataclass
class MetricsReport:
    k1_cut: int
    hyperedge_cut: int
    soed: int
    partition_sizes: list[int] = field(default_factory=list)
    imbalance: float = 0.0
    runtime_ms: float = 0.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "k1_cut": self.k1_cut,
                "hyperedge_cut": self.hyperedge_cut,
                "soed": self.soed,
                "imbalance": self.imbalance,
                "runtime_ms": self.runtime_ms,
                "partition_sizes": self.partition_sizes,
            }
        )

    def csv_header(self) -> str:
        sizes = [f"size_{i}" for i in range(len(self.partition_sizes))]
        return ",".join([*CSV_FIELDS, *sizes])

    def to_csv_row(self) -> str:
        values = [self.k1_cut, self.hyperedge_cut, self.soed, self.imbalance, self.runtime_ms]
        return ",".join(str(v) for v in [*values, *self.partition_sizes])


def _spans(g: Hypergraph, assignment: Sequence[int]) -> np.ndarray:
    """Number of distinct partitions touched by each hyperedge."""
    part = np.asarray(assignment, dtype=np.int64)
    if part.shape != (g.n,):
        raise ValueError(f"assignment has {part.size} entries, hypergraph has {g.n} vertices")
    if g.n and part.min() < 0:
        raise ValueError(f"vertex {int(np.argmin(part))} is unassigned")
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    edge_ptr, pins = g.csr
    edge_of_pin = np.repeat(np.arange(g.m, dtype=np.int64), np.diff(edge_ptr))
    k = int(part.max()) + 1
    pairs = np.unique(edge_of_pin * k + part[pins])
    return np.bincount(pairs // k, minlength=g.m)


def k1_cut(g: Hypergraph, assignment: Sequence[int]) -> int:
    """Sum over hyperedges of (partitions spanned - 1)."""
    spans = _spans(g, assignment)
    return int((spans - 1).sum())


def hyperedge_cut(g: Hypergraph, assignment: Sequence[int]) -> int:
    """Number of hyperedges spanning more than one partition."""
    return int((_spans(g, assignment) > 1).sum())


def soed(g: Hypergraph, assignment: Sequence[int]) -> int:
    """Sum of spans over cut hyperedges."""
    spans = _spans(g, assignment)
    return int(spans[spans > 1].sum())


def partition_sizes(assignment: Sequence[int], k: int) -> list[int]:
    if k < 1:
        raise ValueError("k must be at least 1")
    counts = np.bincount(np.asarray(assignment, dtype=np.int64), minlength=k)
    if counts.size > k:
        raise ValueError(f"assignment uses partition ids >= k={k}")
    return counts.tolist()


def imbalance(sizes: Sequence[int]) -> float:
    """``(max - min) / max`` over partition sizes; empty partitions count as 0."""
    if len(sizes) == 0:
        raise ValueError("no partitions")
    largest = max(sizes)
    if largest <= 0:
        raise ValueError("all partitions are empty")
    return (largest - min(sizes)) / largest


def vertex_imbalance(assignment: Sequence[int], k: int) -> float:
    return imbalance(partition_sizes(assignment, k))


def check_balance(sizes: Sequence[int], lam: float) -> bool:
    """True iff every partition is smaller than ``lam`` times every other one."""
    if lam <= 1:
        raise ValueError("balancing factor must exceed 1")
    if not sizes or min(sizes) <= 0:
        return False
    return max(sizes) < lam * min(sizes)


def evaluate(
    g: Hypergraph, assignment: Sequence[int], k: int, runtime_ms: float = 0.0
) -> MetricsReport:
    spans = _spans(g, assignment)
    cut = spans[spans > 1]
    sizes = partition_sizes(assignment, k)
    return MetricsReport(
        k1_cut=int((spans - 1).sum()),
        hyperedge_cut=int(cut.size),
        soed=int(cut.sum()),
        partition_sizes=sizes,
        imbalance=imbalance(sizes) if max(sizes, default=0) > 0 else 0.0,
        runtime_ms=runtime_ms,
    )
