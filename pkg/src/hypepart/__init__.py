"""Balanced k-way hypergraph partitioning by neighborhood expansion."""

from .baselines import StreamingMode, StreamingParams, minmax_partition, random_partition
from .hype import BalanceMode, ExpansionState, HypeParams, capacity, external_neighbors_score, partition
from .hypergraph import (
    Hypergraph,
    HypergraphFormatError,
    edges_by_size_ascending,
    flip,
    load_edge_list,
    load_hmetis,
    neighbors,
    write_hmetis,
)
from .metrics import (
    MetricsReport,
    check_balance,
    evaluate,
    hyperedge_cut,
    imbalance,
    k1_cut,
    soed,
    vertex_imbalance,
)

__all__ = [
    "BalanceMode",
    "ExpansionState",
    "HypeParams",
    "Hypergraph",
    "HypergraphFormatError",
    "MetricsReport",
    "StreamingMode",
    "StreamingParams",
    "capacity",
    "check_balance",
    "edges_by_size_ascending",
    "evaluate",
    "external_neighbors_score",
    "flip",
    "hyperedge_cut",
    "imbalance",
    "k1_cut",
    "load_edge_list",
    "load_hmetis",
    "minmax_partition",
    "neighbors",
    "partition",
    "random_partition",
    "soed",
    "vertex_imbalance",
    "write_hmetis",
]
