"""Induced squares and the two square graphs.

``T1(G)`` has the non-edges of ``G`` as vertices, two being adjacent when
their union induces a 4-cycle.  ``S(G)`` is its line graph: vertices are the
induced squares, adjacent when they share a diagonal.

A square is identified by its two diagonals (the 4-cycle is determined by
them).  The fast enumerator visits each non-edge ``f = {a, b}``, intersects
``N(a) & N(b)`` word-by-word and reports every non-edge ``{c, d}`` inside that
intersection with ``pair_index(f) < pair_index({c, d})``.  Its cost is the
sum over non-edges of ``C(|N(a) & N(b)|, 2)``, which dominates everything
else at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import (
    EdgeCapExceededError,
    NotANonEdgeError,
    OutOfRangeError,
    SquareCapExceededError,
    TooLargeError,
)
from .graph import (
    Graph,
    VertexPair,
    bits_to_vertices,
    common_neighbors,
    non_edge_indices,
    num_pairs,
    pair_index,
    pairs_of_indices,
)

BRUTEFORCE_MAX_N = 64
DEFAULT_EDGE_CAP = 5_000_000
DEFAULT_SQUARE_CAP = 200_000


@dataclass(frozen=True, order=True)
class InducedSquare:
    """An induced 4-cycle given by its diagonals (``diag1 < diag2``)."""

    diag1: VertexPair
    diag2: VertexPair

    @classmethod
    def from_diagonals(cls, f, g, n: int) -> "InducedSquare":
        f, g = VertexPair.of(*f), VertexPair.of(*g)
        if pair_index(g, n) < pair_index(f, n):
            f, g = g, f
        return cls(f, g)

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return tuple(sorted((*self.diag1, *self.diag2)))

    def key(self, n: int) -> tuple[int, int]:
        return pair_index(self.diag1, n), pair_index(self.diag2, n)


def _squares_from_rows(rows: np.ndarray) -> list[InducedSquare]:
    return [
        InducedSquare(VertexPair(int(a), int(b)), VertexPair(int(c), int(d)))
        for a, b, c, d in rows
    ]


def square_array(g: Graph, cap: int | None = None) -> np.ndarray:
    """All induced squares as an ``(k, 4)`` array ``[a, b, c, d]``.

    ``(a, b)`` and ``(c, d)`` are the diagonals with ``(a, b)`` first in pair
    order; rows are sorted by ``(pair_index(ab), pair_index(cd))``.
    """
    k = _kernels.count_squares(g.adj, g.n)
    if cap is not None and k > cap:
        raise SquareCapExceededError(f"{k} induced squares exceed the cap of {cap}")
    out = np.empty((k, 4), dtype=np.int64)
    _kernels.fill_squares(g.adj, g.n, out)
    return out


def count_squares(g: Graph) -> int:
    return int(_kernels.count_squares(g.adj, g.n))


def enumerate_squares(g: Graph) -> list[InducedSquare]:
    """Every induced square exactly once, in canonical order."""
    return _squares_from_rows(square_array(g))


def enumerate_squares_bruteforce(g: Graph) -> list[InducedSquare]:
    """Reference enumerator: test each 4-set and each of its 3 pairings.

    O(n^4); refuses graphs with more than 64 vertices.
    """
    n = g.n
    if n > BRUTEFORCE_MAX_N:
        raise TooLargeError(f"brute-force enumeration is limited to n <= {BRUTEFORCE_MAX_N}")
    if n < 4:
        return []
    A = g.dense()
    quads = np.array(list(combinations(range(n), 4)), dtype=np.int64)
    w, x, y, z = quads.T
    found = []
    # diagonals (p, q) and (r, s); the four cross pairs must be edges
    for (p, q), (r, s) in (((w, x), (y, z)), ((w, y), (x, z)), ((w, z), (x, y))):
        ok = ~A[p, q] & ~A[r, s] & A[p, r] & A[p, s] & A[q, r] & A[q, s]
        found.append(np.stack([p[ok], q[ok], r[ok], s[ok]], axis=1))
    rows = np.concatenate(found)
    squares = {InducedSquare.from_diagonals(r[:2], r[2:], n) for r in rows.tolist()}
    return sorted(squares, key=lambda sq: sq.key(n))


def _require_non_edge(g: Graph, f) -> VertexPair:
    f = VertexPair.of(int(f[0]), int(f[1]))
    if not f.b < g.n:
        raise OutOfRangeError(f"pair {tuple(f)} outside [0, {g.n})")
    if g.has_edge(f.a, f.b):
        raise NotANonEdgeError(f"{tuple(f)} is an edge, not a vertex of T1")
    return f


def t1_neighbors(g: Graph, f) -> list[VertexPair]:
    """Non-edges ``f'`` such that ``f | f'`` induces a square.

    These are exactly the non-edges lying inside the common neighbourhood
    of the two endpoints of ``f``.
    """
    f = _require_non_edge(g, f)
    cn = bits_to_vertices(common_neighbors(g, f), g.n)
    return [VertexPair(c, d) for c, d in combinations(cn, 2) if not g.has_edge(c, d)]


@dataclass
class T1View:
    """The square graph T1 of ``base``.

    ``pairs[i]`` is the pair index of non-edge ordinal ``i``; ``rank`` maps
    pair indices back to ordinals (-1 for edges).  When materialised,
    ``indptr``/``indices`` hold CSR adjacency over ordinals.
    """

    base: Graph
    pairs: np.ndarray
    rank: np.ndarray
    indptr: np.ndarray | None = None
    indices: np.ndarray | None = None
    squares: np.ndarray | None = field(default=None, repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.pairs)

    @property
    def materialized(self) -> bool:
        return self.indptr is not None

    @property
    def num_edges(self) -> int:
        if self.materialized:
            return len(self.indices) // 2
        return count_squares(self.base)

    def vertex(self, i: int) -> VertexPair:
        a, b = pairs_of_indices(self.pairs[i : i + 1], self.base.n)
        return VertexPair(int(a[0]), int(b[0]))

    def ordinal(self, f) -> int:
        r = int(self.rank[pair_index(VertexPair.of(*f), self.base.n)])
        if r < 0:
            raise NotANonEdgeError(f"{tuple(f)} is an edge, not a vertex of T1")
        return r

    def neighbors(self, i: int) -> list[int]:
        if self.materialized:
            return self.indices[self.indptr[i] : self.indptr[i + 1]].tolist()
        return [self.ordinal(h) for h in t1_neighbors(self.base, self.vertex(i))]

    def degrees(self) -> np.ndarray:
        if self.materialized:
            return np.diff(self.indptr)
        return np.array([len(self.neighbors(i)) for i in range(self.num_vertices)], dtype=np.int64)


def _rank_of(g: Graph, pairs: np.ndarray) -> np.ndarray:
    rank = np.full(num_pairs(g.n), -1, dtype=np.int64)
    rank[pairs] = np.arange(len(pairs), dtype=np.int64)
    return rank


def _csr(nv: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    indptr = np.zeros(nv + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=nv), out=indptr[1:])
    return indptr, indices


def build_t1(g: Graph, materialize: bool = False, edge_cap: int = DEFAULT_EDGE_CAP) -> T1View:
    """T1 of ``g``; with ``materialize`` the edge list is built explicitly.

    Materialisation refuses graphs whose T1 has more than ``edge_cap`` edges.
    """
    pairs = non_edge_indices(g)
    rank = _rank_of(g, pairs)
    view = T1View(g, pairs, rank)
    if not materialize:
        return view
    k = count_squares(g)
    if k > edge_cap:
        raise EdgeCapExceededError(f"T1 has {k} edges, above the cap of {edge_cap}")
    sq = square_array(g)
    n = g.n
    f = rank[sq[:, 0] * (2 * n - sq[:, 0] - 1) // 2 + (sq[:, 1] - sq[:, 0] - 1)]
    h = rank[sq[:, 2] * (2 * n - sq[:, 2] - 1) // 2 + (sq[:, 3] - sq[:, 2] - 1)]
    view.indptr, view.indices = _csr(len(pairs), np.concatenate([f, h]), np.concatenate([h, f]))
    view.squares = sq
    return view


@dataclass
class SGraph:
    """Line graph of T1: squares joined when they share a diagonal."""

    squares: list[InducedSquare]
    edges: list[tuple[int, int]]

    @property
    def num_vertices(self) -> int:
        return len(self.squares)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency_lists(self) -> list[list[int]]:
        adj = [[] for _ in self.squares]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


def build_s(g: Graph, square_cap: int = DEFAULT_SQUARE_CAP, edge_cap: int = DEFAULT_EDGE_CAP) -> SGraph:
    """S(g) with vertices in canonical square order."""
    rows = square_array(g, cap=square_cap)
    n = g.n
    k = len(rows)
    d1 = rows[:, 0] * (2 * n - rows[:, 0] - 1) // 2 + (rows[:, 1] - rows[:, 0] - 1)
    d2 = rows[:, 2] * (2 * n - rows[:, 2] - 1) // 2 + (rows[:, 3] - rows[:, 2] - 1)
    diag = np.concatenate([d1, d2])
    owner = np.concatenate([np.arange(k), np.arange(k)])
    order = np.lexsort((owner, diag))
    diag, owner = diag[order], owner[order]
    bounds = np.flatnonzero(np.diff(diag)) + 1
    groups = np.split(owner, bounds) if k else []
    n_edges = sum(len(gr) * (len(gr) - 1) // 2 for gr in groups)
    if n_edges > edge_cap:
        raise SquareCapExceededError(f"S has {n_edges} edges, above the cap of {edge_cap}")
    edges = set()
    for gr in groups:
        for i, j in combinations(gr.tolist(), 2):
            edges.add((min(i, j), max(i, j)))
    return SGraph(_squares_from_rows(rows), sorted(edges))
