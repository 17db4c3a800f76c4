import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs
from hypepart import Hypergraph, check_balance, hyperedge_cut, imbalance, k1_cut, soed, vertex_imbalance
from hypepart.metrics import evaluate, partition_sizes
from oracles import naive_cut, naive_k1, naive_soed


def test_single_partition_is_free():
    g = Hypergraph(3, [[0, 1, 2], [1]])
    a = [0, 0, 0]
    assert k1_cut(g, a) == hyperedge_cut(g, a) == soed(g, a) == 0


def test_examples_on_one_edge():
    g = Hypergraph(3, [[0, 1, 2]])
    assert k1_cut(g, [0, 0, 1]) == 1
    assert soed(g, [0, 0, 1]) == 2
    assert hyperedge_cut(g, [0, 1, 2]) == 1
    assert k1_cut(g, [0, 1, 2]) == 2


def test_random_instance_matches_oracle():
    rng = np.random.default_rng(0)
    edges = [rng.choice(12, size=int(rng.integers(1, 6)), replace=False).tolist() for _ in range(30)]
    g = Hypergraph(12, edges)
    a = rng.integers(0, 3, size=12).tolist()
    assert k1_cut(g, a) == naive_k1(g.edge_members, a)
    assert hyperedge_cut(g, a) == naive_cut(g.edge_members, a)
    assert soed(g, a) == naive_soed(g.edge_members, a)


def test_unassigned_and_length_errors():
    g = Hypergraph(3, [[0, 1]])
    with pytest.raises(ValueError, match="unassigned"):
        k1_cut(g, [0, -1, 0])
    with pytest.raises(ValueError):
        k1_cut(g, [0, 0])


@pytest.mark.parametrize("sizes, expected", [([5, 5], 0.0), ([4, 6], 1 / 3), ([0, 10], 1.0)])
def test_imbalance_examples(sizes, expected):
    assert imbalance(sizes) == pytest.approx(expected, abs=0)


def test_imbalance_errors():
    with pytest.raises(ValueError):
        imbalance([])
    with pytest.raises(ValueError):
        imbalance([0, 0])


def test_vertex_imbalance_counts_empty_partitions():
    assert partition_sizes([0, 0, 2], 3) == [2, 0, 1]
    assert vertex_imbalance([0, 0, 2], 3) == 1.0


@pytest.mark.parametrize(
    "sizes, lam, expected",
    [([5, 5], 1.01, True), ([4, 6], 1.4, False), ([4, 6], 1.6, True), ([0, 3], 2.0, False)],
)
def test_check_balance(sizes, lam, expected):
    assert check_balance(sizes, lam) is expected


def test_check_balance_rejects_small_lambda():
    with pytest.raises(ValueError):
        check_balance([1, 1], 1.0)


def test_report_serializations_agree():
    g = Hypergraph(4, [[0, 1], [2, 3], [1, 2]])
    report = evaluate(g, [0, 0, 1, 1], 2, runtime_ms=1.5)
    data = json.loads(report.to_json())
    header = report.csv_header().split(",")
    row = report.to_csv_row().split(",")
    assert header == ["k1_cut", "hyperedge_cut", "soed", "imbalance", "runtime_ms", "size_0", "size_1"]
    from_csv = dict(zip(header, row))
    for key in ("k1_cut", "hyperedge_cut", "soed", "imbalance", "runtime_ms"):
        assert float(from_csv[key]) == data[key]
    assert [int(from_csv["size_0"]), int(from_csv["size_1"])] == data["partition_sizes"]
    assert "\n" not in report.to_json()


@st.composite
def graph_and_assignment(draw):
    g = draw(hypergraphs(max_n=15, max_m=20))
    k = draw(st.integers(1, 4))
    a = draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n))
    return g, a, k


@given(graph_and_assignment())
def test_metric_identities(case):
    g, a, k = case
    k1, cut, so = k1_cut(g, a), hyperedge_cut(g, a), soed(g, a)
    assert so == k1 + cut
    assert 0 <= cut <= k1 <= (k - 1) * g.m
    assert (k1, cut, so) == (
        naive_k1(g.edge_members, a), naive_cut(g.edge_members, a), naive_soed(g.edge_members, a)
    )


@given(graph_and_assignment(), st.randoms())
def test_relabeling_invariance(case, rnd):
    g, a, k = case
    perm = list(range(k))
    rnd.shuffle(perm)
    b = [perm[p] for p in a]
    assert (k1_cut(g, a), hyperedge_cut(g, a), soed(g, a)) == (
        k1_cut(g, b), hyperedge_cut(g, b), soed(g, b)
    )
    assert sorted(partition_sizes(a, k)) == sorted(partition_sizes(b, k))


@given(graph_and_assignment(), st.data())
def test_merging_partitions_never_increases_k1(case, data):
    g, a, k = case
    if k < 2:
        return
    src = data.draw(st.integers(0, k - 1))
    dst = data.draw(st.integers(0, k - 1))
    merged = [dst if p == src else p for p in a]
    assert k1_cut(g, merged) <= k1_cut(g, a)
