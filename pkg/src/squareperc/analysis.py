"""Component structure of T1, connectivity of T1 and S, diameters, bonded
squares and the combinatorial invariants that every square component obeys.

Conventions for degenerate inputs:

* a complete graph has an empty T1.  Connectivity and diameter raise
  :class:`CompleteGraphError`; reports and sweeps record it as connected
  with a ``"t1-empty"`` marker instead.
* a one-vertex T1 is connected (marker ``"t1-single"``); S with at most one
  vertex is connected (marker ``"s-trivial"``).
* non-edges lying in no square are size-1 components everywhere, including
  in the largest / second-largest statistics.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import _kernels
from .errors import CapExceededError, CompleteGraphError
from .graph import Graph, VertexPair, induced_edge_count, pairs_of_indices
from .squares import InducedSquare, build_t1, square_array, t1_neighbors

SCHEMA_VERSION = 1
DIAMETER2_VERTEX_CAP = 30_000
DIAMETER_VERTEX_CAP = 6_000


@dataclass(frozen=True)
class ComponentDecomposition:
    """Union-find result over the non-edges of a graph.

    ``pairs[i]`` is the pair index of the i-th non-edge (ascending) and
    ``labels[i]`` its component id.  Ids are numbered by each component's
    smallest non-edge, so the decomposition is canonical for a given graph.
    """

    n: int
    m: int
    pairs: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray
    num_squares: int

    @property
    def num_non_edges(self) -> int:
        return len(self.pairs)

    @property
    def num_components(self) -> int:
        return len(self.sizes)

    @cached_property
    def nontrivial_ids(self) -> list[int]:
        return np.flatnonzero(self.sizes > 1).tolist()

    @property
    def num_nontrivial(self) -> int:
        return len(self.nontrivial_ids)

    @property
    def isolated_count(self) -> int:
        return int((self.sizes == 1).sum())

    @cached_property
    def _sorted_sizes(self) -> np.ndarray:
        return np.sort(self.sizes)[::-1]

    @property
    def largest(self) -> int:
        return int(self._sorted_sizes[0]) if len(self.sizes) else 0

    @property
    def second_largest(self) -> int:
        return int(self._sorted_sizes[1]) if len(self.sizes) > 1 else 0

    @property
    def nontrivial_sizes(self) -> np.ndarray:
        return self.sizes[self.sizes > 1]

    def members(self, cid: int) -> list[VertexPair]:
        a, b = pairs_of_indices(self.pairs[self.labels == cid], self.n)
        return [VertexPair(int(x), int(y)) for x, y in zip(a, b)]

    @cached_property
    def supports(self) -> dict[int, np.ndarray]:
        """Sorted support vertex array per non-trivial component."""
        keep = self.sizes[self.labels] > 1
        if not keep.any():
            return {}
        lab = self.labels[keep]
        a, b = pairs_of_indices(self.pairs[keep], self.n)
        keys = np.unique(np.concatenate([lab * self.n + a, lab * self.n + b]))
        comp, vert = np.divmod(keys, self.n)
        cuts = np.flatnonzero(np.diff(comp)) + 1
        return {int(c[0]): v for c, v in zip(np.split(comp, cuts), np.split(vert, cuts))}

    @property
    def full_support_ids(self) -> list[int]:
        return [cid for cid, sup in self.supports.items() if len(sup) == self.n]

    @property
    def markers(self) -> list[str]:
        out = []
        if self.num_non_edges == 0:
            out.append("t1-empty")
        elif self.num_non_edges == 1:
            out.append("t1-single")
        if self.num_squares <= 1:
            out.append("s-trivial")
        return out


@dataclass(frozen=True)
class BondedReport:
    total_squares: int
    non_bonded: list[InducedSquare]
    non_bonded_count: int

    @property
    def all_bonded(self) -> bool:
        return self.non_bonded_count == 0

    @property
    def vacuous(self) -> bool:
        return self.total_squares == 0


GraphOrDecomp = Union[Graph, ComponentDecomposition]


def t1_components(g: Graph) -> ComponentDecomposition:
    """Square components of ``g`` without materialising T1.

    Every induced square found by the enumeration scan unions its two
    diagonals.
    """
    pairs, labels, sizes, nsq = _kernels.decompose(g.adj, g.n)
    for arr in (pairs, labels, sizes):
        arr.setflags(write=False)
    return ComponentDecomposition(g.n, g.m, pairs, labels, sizes, int(nsq))


def _decomp(x: GraphOrDecomp) -> ComponentDecomposition:
    return x if isinstance(x, ComponentDecomposition) else t1_components(x)


def is_t1_connected(x: GraphOrDecomp) -> bool:
    d = _decomp(x)
    if d.num_non_edges == 0:
        raise CompleteGraphError("graph is complete: T1 has no vertices")
    return d.num_components == 1


def is_s_connected(x: GraphOrDecomp) -> bool:
    """True iff at most one square component is non-trivial."""
    return _decomp(x).num_nontrivial <= 1


def second_largest_component_size(d: ComponentDecomposition) -> int:
    return d.second_largest


def _check_nonempty(t1) -> None:
    if t1.num_vertices == 0:
        raise CompleteGraphError("graph is complete: T1 has no vertices")


def t1_diameter_at_most_two(g: Graph, vertex_cap: int = DIAMETER2_VERTEX_CAP) -> bool:
    """Every two non-edges are T1-adjacent or share a T1-neighbour.

    Builds bit rows of T1 adjacency (``N^2/8`` bytes) and stops at the first
    pair with neither property.
    """
    t1 = build_t1(g)
    _check_nonempty(t1)
    nv = t1.num_vertices
    if nv > vertex_cap:
        raise CapExceededError(f"T1 has {nv} vertices, above the cap of {vertex_cap}")
    rows = _kernels.t1_bit_rows(g.adj, g.n, t1.rank, nv)
    return bool(_kernels.rows_diameter_at_most_two(rows, nv))


def t1_diameter(g: Graph, vertex_cap: int = DIAMETER_VERTEX_CAP) -> float:
    """Exact diameter of T1 by BFS from every vertex; ``math.inf`` if
    disconnected."""
    t1 = build_t1(g)
    _check_nonempty(t1)
    if t1.num_vertices > vertex_cap:
        raise CapExceededError(f"T1 has {t1.num_vertices} vertices, above the cap of {vertex_cap}")
    t1 = build_t1(g, materialize=True)
    d = int(_kernels.bfs_diameter(t1.indptr, t1.indices, t1.num_vertices))
    return math.inf if d < 0 else d


def components_by_bfs(g: Graph) -> list[frozenset[VertexPair]]:
    """Reference square components: plain BFS using :func:`t1_neighbors`.

    Independent of the union-find path; meant for small graphs.
    """
    t1 = build_t1(g)
    seen: set[VertexPair] = set()
    comps = []
    for i in range(t1.num_vertices):
        f = t1.vertex(i)
        if f in seen:
            continue
        comp = {f}
        queue = deque([f])
        while queue:
            h = queue.popleft()
            for k in t1_neighbors(g, h):
                if k not in comp:
                    comp.add(k)
                    queue.append(k)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# -- bonded squares ----------------------------------------------------------


def is_bonded_definition(g: Graph, sq: InducedSquare, all_squares: list[InducedSquare]) -> bool:
    """Some other induced square shares exactly three vertices with ``sq``."""
    mine = set(sq.vertices)
    return any(len(mine & set(other.vertices)) == 3 for other in all_squares if other != sq)


def is_bonded_characterization(g: Graph, sq: InducedSquare) -> bool:
    """Some vertex outside ``sq`` is adjacent to both ends of exactly one
    diagonal."""
    (a, b), (c, d) = sq.diag1, sq.diag2
    A = g.dense()
    on_first = A[a] & A[b]
    on_second = A[c] & A[d]
    witness = on_first ^ on_second
    witness[[a, b, c, d]] = False
    return bool(witness.any())


def bonded_report(g: Graph, list_cap: int = 10_000) -> BondedReport:
    """Apply the outside-vertex test to every square.

    At most ``list_cap`` non-bonded squares are listed; the count is always
    exact.
    """
    out = np.empty((list_cap, 4), dtype=np.int64)
    total, count = _kernels.nonbonded_scan(g.adj, g.n, out)
    rows = out[: min(count, list_cap)]
    listed = [InducedSquare(VertexPair(int(a), int(b)), VertexPair(int(c), int(d))) for a, b, c, d in rows]
    return BondedReport(int(total), listed, int(count))


def count_nonbonded(g: Graph) -> int:
    return bonded_report(g, list_cap=0).non_bonded_count


def count_no_common_neighbour(g: Graph) -> int:
    """Non-edges whose endpoints have no common neighbour.

    Each is an isolated vertex of T1, but not conversely: a non-edge whose
    common neighbourhood is a non-empty clique is isolated too.
    """
    A = g.dense()
    common = (A.astype(np.int32) @ A.astype(np.int32))[np.triu_indices(g.n, 1)]
    return int(((common == 0) & ~A[np.triu_indices(g.n, 1)]).sum())


# -- invariants --------------------------------------------------------------


def check_extremal_bound(g: Graph, d: ComponentDecomposition | None = None) -> list[int]:
    """Non-trivial components whose support spans fewer than
    ``2 |supp| - 4`` edges of ``g``.  Expected to be empty."""
    d = d if d is not None else t1_components(g)
    return [cid for cid, sup in d.supports.items() if induced_edge_count(g, sup) < 2 * len(sup) - 4]


def check_diagonal_bound(d: ComponentDecomposition) -> list[int]:
    """Non-trivial components with ``|C| < ceil(|supp|/2)`` or ``|supp| < 4``."""
    bad = []
    for cid, sup in d.supports.items():
        if len(sup) < 4 or d.sizes[cid] < -(-len(sup) // 2):
            bad.append(cid)
    return bad


def analysis_report(g: Graph) -> dict:
    """Summary in the stable JSON schema used by the ``analyze`` command."""
    d = t1_components(g)
    bonded = bonded_report(g, list_cap=0)
    return {
        "schema_version": SCHEMA_VERSION,
        "n": g.n,
        "m": g.m,
        "numSquares": d.num_squares,
        "numComponents": d.num_components,
        "numNontrivial": d.num_nontrivial,
        "largest": d.largest,
        "secondLargest": d.second_largest,
        "isolatedCount": d.isolated_count,
        "fullSupportComponentIds": d.full_support_ids,
        "t1Connected": d.num_components <= 1,
        "sConnected": d.num_nontrivial <= 1,
        "allBonded": bonded.all_bonded,
        "nonBondedCount": bonded.non_bonded_count,
        "extremalViolations": check_extremal_bound(g, d),
        "markers": d.markers,
    }
