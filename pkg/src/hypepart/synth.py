"""Seeded synthetic hypergraph generators."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from typing import IO

import numpy as np

from .hypergraph import Hypergraph


@dataclass(frozen=True)
class PlantedSpec:
    blocks: int
    vertices_per_block: int
    edges_per_block: int
    edge_size_min: int = 2
    edge_size_max: int = 4
    noise: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class PowerLawSpec:
    n: int
    m: int
    exponent: float = 2.5
    edge_size_min: int = 2
    edge_size_cap: int = 50
    seed: int = 0


@dataclass
class PlantedHypergraph:
    graph: Hypergraph
    labels: list[int]
    noise_edges: list[int]


def generate_planted(spec: PlantedSpec) -> PlantedHypergraph:
    """Hypergraph with ``spec.blocks`` communities of consecutive vertex ids.

    Block ``b`` owns vertices ``[b * vpb, (b + 1) * vpb)``. Every hyperedge
    draws its size uniformly from ``[edge_size_min, edge_size_max]``; with
    probability ``noise`` its members are drawn from all vertices instead of
    its own block.
    """
    if not 0.0 <= spec.noise <= 1.0:
        raise ValueError("noise must lie in [0, 1]")
    if spec.blocks < 1 or spec.vertices_per_block < 1 or spec.edges_per_block < 0:
        raise ValueError("blocks and vertices_per_block must be positive")
    if spec.edge_size_min < 1 or spec.edge_size_min > spec.edge_size_max:
        raise ValueError("need 1 <= edge_size_min <= edge_size_max")
    if spec.edge_size_max > spec.vertices_per_block:
        raise ValueError(
            f"edge size {spec.edge_size_max} exceeds block size {spec.vertices_per_block}"
        )
    rng = np.random.default_rng(spec.seed)
    vpb = spec.vertices_per_block
    n = spec.blocks * vpb
    edges = []
    noise_edges = []
    for b in range(spec.blocks):
        for _ in range(spec.edges_per_block):
            size = int(rng.integers(spec.edge_size_min, spec.edge_size_max + 1))
            if rng.random() < spec.noise:
                noise_edges.append(len(edges))
                edges.append(rng.choice(n, size=size, replace=False).tolist())
            else:
                edges.append((b * vpb + rng.choice(vpb, size=size, replace=False)).tolist())
    labels = [v // vpb for v in range(n)]
    return PlantedHypergraph(Hypergraph(n, edges), labels, noise_edges)


def size_distribution(exponent: float, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Support ``lo..hi`` and probabilities proportional to ``size ** -exponent``."""
    support = np.arange(lo, hi + 1)
    weights = support.astype(float) ** -exponent
    return support, weights / weights.sum()


def generate_powerlaw(spec: PowerLawSpec) -> Hypergraph:
    """Hyperedge sizes from a truncated discrete power law, members uniform.

    Sizes are drawn by inverse-CDF lookup over ``[edge_size_min, edge_size_cap]``.
    """
    if spec.exponent <= 1:
        raise ValueError("exponent must exceed 1")
    if spec.edge_size_min < 1 or spec.edge_size_min > spec.edge_size_cap:
        raise ValueError("need 1 <= edge_size_min <= edge_size_cap")
    if spec.m > 0 and spec.edge_size_cap > spec.n:
        raise ValueError(f"edge_size_cap {spec.edge_size_cap} exceeds n={spec.n}")
    rng = np.random.default_rng(spec.seed)
    support, probs = size_distribution(spec.exponent, spec.edge_size_min, spec.edge_size_cap)
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    sizes = support[np.searchsorted(cdf, rng.random(spec.m), side="right")]
    ptr = np.zeros(spec.m + 1, dtype=np.int64)
    np.cumsum(sizes, out=ptr[1:])
    pins = rng.integers(0, spec.n, size=int(ptr[-1]))

    # redraw members of edges that picked the same vertex twice
    edge_of_pin = np.repeat(np.arange(spec.m), sizes)
    keyed = np.sort(edge_of_pin * spec.n + pins)
    clashing = np.unique(keyed[1:][np.diff(keyed) == 0] // spec.n) if keyed.size else []
    edges = np.split(pins, ptr[1:-1]) if spec.m else []
    for e in clashing:
        edges[e] = rng.choice(spec.n, size=int(sizes[e]), replace=False)
    return Hypergraph(spec.n, (e.tolist() for e in edges))


def degree_histogram(g: Hypergraph) -> list[tuple[int, int]]:
    """``(degree, vertex count)`` pairs, ascending by degree."""
    counts = Counter(len(incident) for incident in g.vertex_edges)
    return sorted(counts.items())


def write_histogram_csv(hist: list[tuple[int, int]], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["degree", "count"])
    writer.writerows(hist)
