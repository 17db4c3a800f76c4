import io

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import hypergraphs, random_hypergraph
from hypepart import Hypergraph, HypergraphFormatError, flip, load_edge_list, load_hmetis, neighbors
from hypepart.hypergraph import dumps_hmetis, read_labels, write_labels
from oracles import naive_neighbors


def test_load_hmetis_basic():
    g = load_hmetis(io.BytesIO(b"2 3\n1 2\n2 3\n"))
    assert (g.n, g.m) == (3, 2)
    assert g.edge_members == ((0, 1), (1, 2))
    assert g.vertex_edges == ((0,), (0, 1), (1,))
    assert g.pin_count == 4


def test_load_hmetis_singleton_edge():
    g = load_hmetis(b"1 1\n1\n")
    assert (g.n, g.m) == (1, 1)
    assert g.edge_members == ((0,),)


def test_load_hmetis_comments_and_duplicates():
    g = load_hmetis("% a comment\n2 3\n% another\n1 2 2 1\n3 2\n")
    assert g.edge_members == ((0, 1), (1, 2))


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2 3\n1 2\n2 4\n", "out of range"),
        ("2 3\n1 2\n2 0\n", "out of range"),
        ("x y\n1\n", "malformed header"),
        ("2\n1\n", "malformed header"),
        ("2 3 1\n1 2\n2 3\n", "malformed header"),
        ("2 3\n1 2\n", "found 1"),
        ("1 3\n1 2\n2 3\n", "found 2"),
        ("2 3\n1 2\n\n", "found 1"),
        ("3 3\n1 2\n\n2 3\n", "empty hyperedge"),
        ("2 3\n1 a\n2 3\n", "non-integer"),
        ("", "missing header"),
    ],
)
def test_load_hmetis_errors(text, fragment):
    with pytest.raises(HypergraphFormatError, match=fragment):
        load_hmetis(text)


def test_load_edge_list():
    g, elabels, vlabels = load_edge_list(io.BytesIO(b"a x\na y\nb y\n"))
    assert (g.n, g.m) == (2, 2)
    assert g.edge_members == ((0, 1), (1,))
    assert elabels == ["a", "b"]
    assert vlabels == ["x", "y"]


def test_load_edge_list_empty():
    g, elabels, vlabels = load_edge_list(b"")
    assert (g.n, g.m) == (0, 0)
    assert elabels == vlabels == []


def test_load_edge_list_bad_line():
    with pytest.raises(HypergraphFormatError):
        load_edge_list(b"a x y\n")


def test_label_sidecar_roundtrip():
    buf = io.StringIO()
    write_labels(["u1", "u9", "bob"], buf)
    assert buf.getvalue() == "0 u1\n1 u9\n2 bob\n"
    assert read_labels(io.StringIO(buf.getvalue())) == ["u1", "u9", "bob"]


def test_constructor_rejects_bad_edges():
    with pytest.raises(ValueError):
        Hypergraph(3, [[]])
    with pytest.raises(ValueError):
        Hypergraph(3, [[0, 3]])


def test_flip_small():
    g = Hypergraph(3, [[0, 1], [1, 2]])
    f = flip(g)
    assert (f.n, f.m) == (2, 3)
    assert f.edge_members == ((0,), (0, 1), (1,))
    assert flip(f) == g


def test_flip_rejects_isolated_vertex():
    with pytest.raises(ValueError, match="no incident"):
        flip(Hypergraph(3, [[0, 1]]))


def test_neighbors_examples():
    g = Hypergraph(3, [[0, 1], [1, 2]])
    assert neighbors(g, 1) == [0, 2]
    assert neighbors(Hypergraph(2, [[0]]), 1) == []
    g = Hypergraph(4, [[0, 1, 2], [1, 2, 3]])
    assert neighbors(g, 1) == [0, 2, 3]
    with pytest.raises(IndexError):
        neighbors(g, 4)


def test_edges_by_size_ascending():
    g = Hypergraph(3, [[0, 1, 2], [0], [1, 2]])
    assert g.edges_by_size_ascending == (1, 2, 0)
    assert g.edges_by_size_ascending is g.edges_by_size_ascending
    same = Hypergraph(4, [[0, 1], [2, 3], [1, 2]])
    assert same.edges_by_size_ascending == (0, 1, 2)


def test_edges_by_size_against_reference_sort():
    rng = np.random.default_rng(3)
    g = random_hypergraph(rng, 200, 1000, max_size=30)
    expected = [e for _, e in sorted((len(p), e) for e, p in enumerate(g.edge_members))]
    assert list(g.edges_by_size_ascending) == expected


@given(hypergraphs())
def test_transpose_consistency(g):
    pairs_by_edge = {(v, e) for e, pins in enumerate(g.edge_members) for v in pins}
    pairs_by_vertex = {(v, e) for v, inc in enumerate(g.vertex_edges) for e in inc}
    assert pairs_by_edge == pairs_by_vertex
    assert g.pin_count == len(pairs_by_edge) == sum(map(len, g.vertex_edges))
    for pins in g.edge_members:
        assert list(pins) == sorted(set(pins)) and pins
    for inc in g.vertex_edges:
        assert list(inc) == sorted(set(inc))


@given(hypergraphs())
def test_hmetis_roundtrip(g):
    assert load_hmetis(dumps_hmetis(g)) == g


@given(hypergraphs())
def test_neighbors_against_oracle(g):
    for v in range(g.n):
        nb = neighbors(g, v)
        assert set(nb) == naive_neighbors(g.edge_members, v)
        assert g.neighbor_count(v) == len(nb)
        bound = sum(len(g.edge_members[e]) - 1 for e in g.vertex_edges[v])
        assert len(nb) <= bound
        shares_only_v = all(
            set(g.edge_members[a]) & set(g.edge_members[b]) == {v}
            for i, a in enumerate(g.vertex_edges[v])
            for b in g.vertex_edges[v][i + 1 :]
        )
        assert (len(nb) == bound) == shares_only_v


@settings(max_examples=50)
@given(hypergraphs(min_n=1))
def test_flip_involution(g):
    if any(not inc for inc in g.vertex_edges):
        with pytest.raises(ValueError):
            flip(g)
        return
    f = flip(g)
    assert (f.n, f.m, f.pin_count) == (g.m, g.n, g.pin_count)
    assert flip(f) == g
