"""Immutable simple graphs stored as bit-packed adjacency rows.

Vertices are ``0..n-1``.  Unordered vertex pairs ``a < b`` get a canonical
lexicographic index in ``[0, C(n, 2))`` via :func:`pair_index`; the non-edges
of a graph (the vertices of its square graph) are always listed in that order.

Edge-list files look like::

    # optional comment lines
    4 4
    0 1
    0 3
    1 2
    2 3

with the header ``n m`` followed by ``m`` lines ``u v`` (``u < v``) sorted by
pair index.  :func:`write_edge_list` and :func:`read_edge_list` round-trip
bit-exactly.
"""

from __future__ import annotations

import os
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import (
    DuplicateEdgeError,
    DuplicateVertexError,
    EmptyQuerySetError,
    OutOfRangeError,
    ParseError,
    SelfLoopError,
)


class VertexPair(NamedTuple):
    """Unordered vertex pair, stored with ``a < b``."""

    a: int
    b: int

    @classmethod
    def of(cls, u: int, v: int) -> "VertexPair":
        if u == v:
            raise SelfLoopError(f"pair ({u}, {v}) is a self-loop")
        return cls(u, v) if u < v else cls(v, u)


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(p: Sequence[int], n: int) -> int:
    """Lexicographic index of the pair ``(a, b)``, ``a < b < n``.

    >>> pair_index((1, 3), 5)
    5
    """
    a, b = int(p[0]), int(p[1])
    if not 0 <= a < b < n:
        raise OutOfRangeError(f"pair ({a}, {b}) not a valid pair for n={n}")
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def pair_of_index(idx: int, n: int) -> VertexPair:
    if not 0 <= idx < num_pairs(n):
        raise OutOfRangeError(f"pair index {idx} out of range for n={n}")
    a, b = pairs_of_indices(np.array([idx], dtype=np.int64), n)
    return VertexPair(int(a[0]), int(b[0]))


def pairs_of_indices(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised inverse of :func:`pair_index`."""
    starts = np.arange(n, dtype=np.int64)
    starts = starts * (2 * n - starts - 1) // 2
    a = np.searchsorted(starts, idx, side="right") - 1
    b = idx - starts[a] + a + 1
    return a.astype(np.int64), b.astype(np.int64)


def _words(n: int) -> int:
    return max(1, (n + 63) // 64)


class Graph:
    """Undirected simple graph on ``0..n-1`` with read-only bit rows.

    Construct through :func:`new_graph`, :func:`from_dense` or the
    samplers; the constructor itself trusts its input.
    """

    __slots__ = ("n", "adj", "m", "_dense")

    def __init__(self, n: int, adj: np.ndarray, m: int | None = None):
        adj = np.ascontiguousarray(adj, dtype=np.uint64)
        adj.setflags(write=False)
        self.n = int(n)
        self.adj = adj
        if m is None:
            m = int(np.unpackbits(adj.view(np.uint8)).sum()) // 2
        self.m = int(m)
        self._dense = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self.adj.tobytes()))

    @property
    def num_non_edges(self) -> int:
        return num_pairs(self.n) - self.m

    def dense(self) -> np.ndarray:
        """Boolean ``n x n`` adjacency matrix (cached, read-only)."""
        if self._dense is None:
            bits = np.unpackbits(self.adj.view(np.uint8), axis=1, bitorder="little")
            d = bits[:, : self.n].astype(bool)
            d.setflags(write=False)
            self._dense = d
        return self._dense

    def has_edge(self, u: int, v: int) -> bool:
        return bool((int(self.adj[u, v >> 6]) >> (v & 63)) & 1)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.dense()[v]).tolist()

    def degree(self, v: int) -> int:
        return int(self.dense()[v].sum())

    def edges(self) -> list[VertexPair]:
        """Edges sorted by pair index."""
        a, b = np.nonzero(np.triu(self.dense(), 1))
        return [VertexPair(int(x), int(y)) for x, y in zip(a, b)]

    def pair_mask(self) -> np.ndarray:
        """Edge indicator per pair, in pair-index order."""
        iu = np.triu_indices(self.n, 1)
        return self.dense()[iu]


def from_dense(mat: np.ndarray) -> Graph:
    """Graph from a symmetric boolean matrix with an empty diagonal."""
    mat = np.asarray(mat, dtype=bool)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("adjacency matrix must be square")
    if mat.diagonal().any():
        raise SelfLoopError("adjacency matrix has a non-zero diagonal")
    if not np.array_equal(mat, mat.T):
        raise ValueError("adjacency matrix is not symmetric")
    return from_pair_mask(mat[np.triu_indices(n, 1)], n)


def from_pair_mask(mask: np.ndarray, n: int) -> Graph:
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    if mask.shape != (num_pairs(n),):
        raise ValueError(f"pair mask must have length C({n}, 2)")
    adj = _kernels.bits_from_pair_mask(mask, n, _words(n))
    return Graph(n, adj, int(mask.sum()))


def new_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    """Build a graph from an explicit edge list.

    Pairs may be given in either orientation; self-loops, out-of-range
    vertices and repeated pairs are rejected.
    """
    if n < 0:
        raise OutOfRangeError("vertex count must be non-negative")
    mask = np.zeros(num_pairs(n), dtype=np.uint8)
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
        k = pair_index(VertexPair.of(u, v), n)
        if mask[k]:
            raise DuplicateEdgeError(f"edge ({min(u, v)}, {max(u, v)}) given twice")
        mask[k] = 1
    return from_pair_mask(mask, n)


def empty_graph(n: int) -> Graph:
    return Graph(n, np.zeros((n, _words(n)), dtype=np.uint64), 0)


def complete_graph(n: int) -> Graph:
    return complement(empty_graph(n))


def complement(g: Graph) -> Graph:
    adj = ~g.adj
    n = g.n
    tail = n & 63
    if tail:
        adj[:, -1] &= np.uint64((1 << tail) - 1)
    if n < 64 * adj.shape[1] and not tail:
        adj[:, n // 64 :] = 0
    v = np.arange(n)
    adj[v, v >> 6] &= ~(np.uint64(1) << (v & 63).astype(np.uint64))
    return Graph(n, adj, num_pairs(n) - g.m)


def common_neighbors(g: Graph, s: Iterable[int]) -> np.ndarray:
    """Bit row of vertices outside ``s`` adjacent to every vertex of ``s``."""
    s = [int(v) for v in s]
    if not s:
        raise EmptyQuerySetError("common_neighbors needs at least one vertex")
    for v in s:
        if not 0 <= v < g.n:
            raise OutOfRangeError(f"vertex {v} outside [0, {g.n})")
    row = np.bitwise_and.reduce(g.adj[s], axis=0)
    for v in s:
        row[v >> 6] &= ~np.uint64(1 << (v & 63))
    return row


def bits_to_vertices(row: np.ndarray, n: int) -> list[int]:
    bits = np.unpackbits(np.ascontiguousarray(row).view(np.uint8), bitorder="little")
    return np.flatnonzero(bits[:n]).tolist()


def non_edge_indices(g: Graph) -> np.ndarray:
    """Pair indices of the non-edges, ascending."""
    return np.flatnonzero(g.pair_mask() == 0).astype(np.int64)


def non_edges(g: Graph) -> list[VertexPair]:
    a, b = pairs_of_indices(non_edge_indices(g), g.n)
    return [VertexPair(int(x), int(y)) for x, y in zip(a, b)]


def induced_subgraph(g: Graph, s: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``s``; vertex ``i`` of the result is ``s[i]`` of ``g``."""
    s = [int(v) for v in s]
    if len(set(s)) != len(s):
        raise DuplicateVertexError("induced_subgraph vertex list has duplicates")
    for v in s:
        if not 0 <= v < g.n:
            raise OutOfRangeError(f"vertex {v} outside [0, {g.n})")
    if not s:
        return empty_graph(0), []
    sub = g.dense()[np.ix_(s, s)]
    return from_dense(sub), list(s)


def induced_edge_count(g: Graph, s: Sequence[int]) -> int:
    idx = np.asarray(list(s), dtype=np.int64)
    return int(g.dense()[np.ix_(idx, idx)].sum()) // 2


# -- edge-list files ---------------------------------------------------------


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{e.a} {e.b}" for e in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    header = None
    n = m = 0
    mask = None
    last = -1
    seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected two non-negative integers, got {raw!r}", lineno)
        x, y = int(parts[0]), int(parts[1])
        if header is None:
            header = (x, y)
            n, m = x, y
            if m > num_pairs(n):
                raise ParseError(f"edge count {m} exceeds C({n}, 2)", lineno)
            mask = np.zeros(num_pairs(n), dtype=np.uint8)
            continue
        if not x < y < n:
            raise ParseError(f"edge ({x}, {y}) must satisfy u < v < n={n}", lineno)
        k = x * (2 * n - x - 1) // 2 + (y - x - 1)
        if k <= last:
            raise ParseError("edges must be sorted by pair index without repeats", lineno)
        last = k
        mask[k] = 1
        seen += 1
        if seen > m:
            raise ParseError(f"more than the declared {m} edges", lineno)
    if header is None:
        raise ParseError("missing 'n m' header")
    if seen != m:
        raise ParseError(f"header declares {m} edges but {seen} were listed")
    return from_pair_mask(mask, n)


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(g))


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())
