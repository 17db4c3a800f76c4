"""In-memory hypergraph with dual incidence lists, plus hMETIS / edge-list I/O."""

from __future__ import annotations

import io
from bisect import bisect_left
from functools import cached_property
from typing import IO, Iterable, Sequence

import numpy as np


class HypergraphFormatError(ValueError):
    """Raised when an input file does not follow the expected format."""


class Hypergraph:
    """Immutable hypergraph over dense vertex ids ``0..n-1`` and edge ids ``0..m-1``.

    ``edge_members[e]`` and ``vertex_edges[v]`` are sorted tuples and exact
    transposes of each other.
    """

    __slots__ = ("n", "m", "edge_members", "vertex_edges", "pin_count", "__dict__")

    def __init__(self, n: int, edges: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        members = []
        vertex_edges: list[list[int]] = [[] for _ in range(n)]
        for e, raw in enumerate(edges):
            pins = tuple(sorted(set(raw)))
            if not pins:
                raise ValueError(f"hyperedge {e} is empty")
            if pins[0] < 0 or pins[-1] >= n:
                raise ValueError(f"hyperedge {e} has a vertex outside [0, {n})")
            members.append(pins)
            for v in pins:
                vertex_edges[v].append(e)
        self.n = n
        self.m = len(members)
        self.edge_members: tuple[tuple[int, ...], ...] = tuple(members)
        # edges are visited in id order, so each list is already sorted
        self.vertex_edges: tuple[tuple[int, ...], ...] = tuple(map(tuple, vertex_edges))
        self.pin_count = sum(map(len, members))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, pins={self.pin_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.edge_members == other.edge_members

    def __hash__(self) -> int:
        return hash((self.n, self.edge_members))

    def degree(self, v: int) -> int:
        return len(self.vertex_edges[v])

    def edge_size(self, e: int) -> int:
        return len(self.edge_members[e])

    @cached_property
    def edges_by_size_ascending(self) -> tuple[int, ...]:
        """Hyperedge ids sorted by size, ties broken by id. Computed once."""
        sizes = [len(pins) for pins in self.edge_members]
        return tuple(sorted(range(self.m), key=sizes.__getitem__))

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(edge_ptr, pins)`` arrays: members of ``e`` are ``pins[edge_ptr[e]:edge_ptr[e+1]]``."""
        sizes = np.fromiter((len(p) for p in self.edge_members), dtype=np.int64, count=self.m)
        edge_ptr = np.zeros(self.m + 1, dtype=np.int64)
        np.cumsum(sizes, out=edge_ptr[1:])
        pins = np.fromiter(
            (v for p in self.edge_members for v in p), dtype=np.int64, count=self.pin_count
        )
        return edge_ptr, pins

    @cached_property
    def _neighbor_counts(self) -> list[int]:
        return [-1] * self.n

    def neighbor_count(self, v: int) -> int:
        """``|N(v)|``, memoized per vertex."""
        counts = self._neighbor_counts
        c = counts[v]
        if c < 0:
            c = len(_neighbor_set(self, v))
            counts[v] = c
        return c

    def position_in_edge(self, e: int, v: int) -> int:
        return bisect_left(self.edge_members[e], v)


def _neighbor_set(g: Hypergraph, v: int) -> set[int]:
    incident = g.vertex_edges[v]
    if not incident:
        return set()
    members = g.edge_members
    out = set(members[incident[0]])
    for e in incident[1:]:
        out.update(members[e])
    out.discard(v)
    return out


def neighbors(g: Hypergraph, v: int) -> list[int]:
    """Vertices sharing at least one hyperedge with ``v`` (excluding ``v``), ascending."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range [0, {g.n})")
    return sorted(_neighbor_set(g, v))


def edges_by_size_ascending(g: Hypergraph) -> tuple[int, ...]:
    return g.edges_by_size_ascending


def flip(g: Hypergraph) -> Hypergraph:
    """Transpose: every vertex becomes a hyperedge and every hyperedge a vertex.

    Vertices without incident edges would become empty hyperedges, which are
    not representable, so the input must have no isolated vertices.
    """
    for v, incident in enumerate(g.vertex_edges):
        if not incident:
            raise ValueError(f"cannot flip: vertex {v} has no incident hyperedges")
    return Hypergraph(g.m, g.vertex_edges)


# ---------------------------------------------------------------------------
# I/O


def _read_text(source: IO | bytes | str) -> str:
    if isinstance(source, bytes):
        return source.decode()
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode() if isinstance(data, bytes) else data


def load_hmetis(source: IO | bytes | str) -> Hypergraph:
    """Parse the plain (unweighted) hMETIS format.

    ``source`` is a binary or text stream, or the file content itself.
    The header is ``m n``; each of the following ``m`` lines lists the
    1-indexed members of one hyperedge. Lines starting with ``%`` are
    comments. Repeated vertices within a line are collapsed.
    """
    lines = [ln for ln in _read_text(source).splitlines() if not ln.lstrip().startswith("%")]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise HypergraphFormatError("missing header")
    header = lines[0].split()
    if len(header) != 2:
        raise HypergraphFormatError(
            f"malformed header {lines[0]!r}: expected 'm n' (weighted variants are not supported)"
        )
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise HypergraphFormatError(f"malformed header {lines[0]!r}") from None
    if m < 0 or n < 0:
        raise HypergraphFormatError(f"malformed header {lines[0]!r}: negative count")
    body = lines[1:]
    if len(body) != m:
        raise HypergraphFormatError(f"header declares {m} hyperedges, found {len(body)} lines")
    edges = []
    for lineno, line in enumerate(body, start=2):
        tokens = line.split()
        if not tokens:
            raise HypergraphFormatError(f"line {lineno}: empty hyperedge")
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            raise HypergraphFormatError(f"line {lineno}: non-integer vertex id") from None
        for vid in ids:
            if not 1 <= vid <= n:
                raise HypergraphFormatError(f"line {lineno}: vertex id {vid} out of range [1, {n}]")
        edges.append([vid - 1 for vid in ids])
    return Hypergraph(n, edges)


def write_hmetis(g: Hypergraph, stream: IO[str]) -> None:
    stream.write(f"{g.m} {g.n}\n")
    for pins in g.edge_members:
        stream.write(" ".join(str(v + 1) for v in pins))
        stream.write("\n")


def dumps_hmetis(g: Hypergraph) -> str:
    buf = io.StringIO()
    write_hmetis(g, buf)
    return buf.getvalue()


def load_edge_list(source: IO | bytes | str) -> tuple[Hypergraph, list[str], list[str]]:
    """Parse ``hyperedge_label vertex_label`` pairs, one per line.

    Labels get dense ids in order of first appearance. Blank lines and
    lines starting with ``%`` or ``#`` are skipped.

    Returns:
        ``(graph, edge_labels, vertex_labels)``, where ``edge_labels[e]`` is
        the original label of hyperedge ``e`` (likewise for vertices).
    """
    edge_ids: dict[str, int] = {}
    vertex_ids: dict[str, int] = {}
    edges: list[list[int]] = []
    for lineno, line in enumerate(_read_text(source).splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "%#":
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise HypergraphFormatError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        elabel, vlabel = tokens
        e = edge_ids.setdefault(elabel, len(edge_ids))
        if e == len(edges):
            edges.append([])
        edges[e].append(vertex_ids.setdefault(vlabel, len(vertex_ids)))
    return Hypergraph(len(vertex_ids), edges), list(edge_ids), list(vertex_ids)


def write_labels(labels: Sequence[str], stream: IO[str]) -> None:
    """Sidecar mapping: one ``dense_id label`` line per id."""
    for i, label in enumerate(labels):
        stream.write(f"{i} {label}\n")


def read_labels(stream: IO[str]) -> list[str]:
    labels = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        idx, _, label = line.strip().partition(" ")
        if int(idx) != len(labels):
            raise HypergraphFormatError(f"line {lineno}: ids must be dense and ascending")
        labels.append(label)
    return labels
