"""Explicit graphs with unusual square-component structure.

The 22-vertex "ladder" graphs have a top layer ``v0..v10`` and a bottom layer
``v11..v21``.  ``G'`` joins each layer into the square of an 11-cycle
(distances 1 and 2) and joins top ``i`` to bottom ``(i +- 1) mod 11``.
``G''`` adds the cross edges top ``i`` to bottom ``(i + 6 +- 1) mod 11``, and
``G`` is their union.  :func:`build_ladder_family` generalises the layer
size 11 and the shift 6.

The other family is the complete bipartite graph ``K_{2,n-2}`` together with
its one-edge-removed and one-edge-added variants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import ComponentDecomposition, t1_components
from .errors import InvalidParamsError, OverlapDetectedError
from .graph import Graph, VertexPair, new_graph


def _edge(u: int, v: int) -> VertexPair:
    return VertexPair.of(u, v)


def g_prime_edges() -> set[VertexPair]:
    E = set()
    # cross edges (top i to bottom i-1 and i+1), with the four wrap-arounds
    E |= {_edge(i, i + 10) for i in range(1, 10)} | {_edge(i, i + 12) for i in range(1, 10)}
    E |= {_edge(0, 12), _edge(0, 21), _edge(10, 11), _edge(10, 20)}
    # layer cycles
    E |= {_edge(i, i + 1) for i in range(0, 10)} | {_edge(0, 10)}
    E |= {_edge(i, i + 1) for i in range(11, 21)} | {_edge(11, 21)}
    # distance-two chords
    E |= {_edge(i, i + 2) for i in range(0, 9)} | {_edge(0, 9), _edge(1, 10)}
    E |= {_edge(i, i + 2) for i in range(11, 20)} | {_edge(11, 20), _edge(12, 21)}
    return E


def g_double_prime_edges() -> set[VertexPair]:
    return {_edge(i, (i + 6 + d) % 11 + 11) for i in range(11) for d in (-1, 1)}


def _from_edges(n: int, edges) -> Graph:
    return new_graph(n, sorted(edges))


def build_g_prime() -> Graph:
    return _from_edges(22, g_prime_edges())


def build_g_double_prime() -> Graph:
    return _from_edges(22, g_double_prime_edges())


def build_g() -> Graph:
    first, second = g_prime_edges(), g_double_prime_edges()
    if first & second:
        raise OverlapDetectedError(f"edge sets overlap: {sorted(first & second)}")
    return _from_edges(22, first | second)


@dataclass(frozen=True)
class LadderParams:
    m: int = 11
    s: int = 6

    def __post_init__(self):
        if self.m < 4 or not 0 < self.s < self.m:
            raise InvalidParamsError(f"need m >= 4 and 0 < s < m, got m={self.m}, s={self.s}")

    @property
    def num_vertices(self) -> int:
        return 2 * self.m


def ladder_edge_sets(params: LadderParams) -> tuple[set[VertexPair], set[VertexPair]]:
    """(base ladder edges, shifted cross edges) for the given layer size."""
    m, s = params.m, params.s
    base = set()
    for layer in (0, m):
        for i in range(m):
            for dist in (1, 2):
                base.add(_edge(layer + i, layer + (i + dist) % m))
    for i in range(m):
        for d in (-1, 1):
            base.add(_edge(i, m + (i + d) % m))
    shifted = {_edge(i, m + (i + s + d) % m) for i in range(m) for d in (-1, 1)}
    return base, shifted


def build_ladder_family(params: LadderParams) -> Graph:
    base, shifted = ladder_edge_sets(params)
    if base & shifted:
        raise OverlapDetectedError(f"edge sets overlap: {sorted(base & shifted)}")
    return _from_edges(params.num_vertices, base | shifted)


def expected_diagonal_sets(m: int = 11, s: int = 6) -> tuple[set[VertexPair], set[VertexPair]]:
    """Cross pairs at offsets {0, +-2} and at offsets {s, s +- 2} (mod m)."""
    first = {_edge(i, m + (i + off) % m) for i in range(m) for off in (0, 2, -2)}
    second = {_edge(i, m + (i + s + off) % m) for i in range(m) for off in (0, 2, -2)}
    return first, second


def build_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InvalidParamsError("both parts need at least one vertex")
    return new_graph(a + b, [(i, j) for i in range(a) for j in range(a, a + b)])


def bipartite_demo_graphs(n: int = 6) -> dict[str, Graph]:
    """``K_{2,n-2}``, the same minus edge (0, 2), and plus edge (0, 1)."""
    base = build_complete_bipartite(2, n - 2)
    edges = base.edges()
    return {
        "base": base,
        "minus-edge": new_graph(n, [e for e in edges if e != (0, 2)]),
        "plus-edge": new_graph(n, edges + [VertexPair(0, 1)]),
    }


# -- verification ------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Verification:
    family: str
    checks: list[Check] = field(default_factory=list)
    certificate: dict[int, list[VertexPair]] = field(default_factory=dict)
    decomposition: ComponentDecomposition | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))


def _certificate(d: ComponentDecomposition) -> dict[int, list[VertexPair]]:
    return {cid: d.members(cid) for cid in d.nontrivial_ids}


def _describe(d: ComponentDecomposition) -> str:
    parts = [f"#{cid}: {int(d.sizes[cid])} diagonals, support {len(sup)}" for cid, sup in d.supports.items()]
    return "; ".join(parts) if parts else "no non-trivial components"


def verify_g_prime() -> Verification:
    g = build_g_prime()
    d = t1_components(g)
    first, _ = expected_diagonal_sets()
    v = Verification("g-prime", certificate=_certificate(d), decomposition=d)
    v.add("22 vertices and 66 edges", g.n == 22 and g.m == 66, f"n={g.n}, m={g.m}")
    v.add("one non-trivial component", d.num_nontrivial == 1, _describe(d))
    v.add("that component has full support", d.full_support_ids == d.nontrivial_ids, _describe(d))
    got = [set(members) for members in v.certificate.values()]
    v.add("its diagonals are the offsets {0, +-2} set", got == [first], f"{[len(x) for x in got]} diagonals vs {len(first)}")
    return v


def verify_g() -> Verification:
    g = build_g()
    d = t1_components(g)
    first, second = expected_diagonal_sets()
    v = Verification("g", certificate=_certificate(d), decomposition=d)
    v.add("22 vertices and 88 edges", g.n == 22 and g.m == 88, f"n={g.n}, m={g.m}")
    v.add("offset sets have 33 diagonals each and are disjoint",
          len(first) == len(second) == 33 and not first & second)
    v.add("exactly two non-trivial components", d.num_nontrivial == 2, _describe(d))
    v.add("both have full support", len(d.full_support_ids) == 2 and d.num_nontrivial == 2, _describe(d))
    got = sorted((set(mem) for mem in v.certificate.values()), key=len)
    want = [first, second]
    matches = len(got) == 2 and (got in (want, want[::-1]))
    detail = ", ".join(
        f"#{cid}: {len(mem)} diagonals ({len(set(mem) & first)} in offsets-0 set, "
        f"{len(set(mem) & second)} in offsets-6 set, {len(set(mem) - first - second)} in neither)"
        for cid, mem in v.certificate.items()
    )
    v.add("component diagonal sets are exactly the two offset sets", matches, detail)
    return v


def verify_ladder(params: LadderParams, min_full_support: int = 3) -> Verification:
    g = build_ladder_family(params)
    d = t1_components(g)
    v = Verification(f"ladder(m={params.m}, s={params.s})", certificate=_certificate(d), decomposition=d)
    k = len(d.full_support_ids)
    v.add(f"at least {min_full_support} full-support components", k >= min_full_support,
          f"{k} full-support; {_describe(d)}")
    return v


def verify_bipartite_demo(n: int = 6) -> Verification:
    graphs = bipartite_demo_graphs(n)
    v = Verification("bipartite-demo")
    base = t1_components(graphs["base"])
    minus = t1_components(graphs["minus-edge"])
    plus = t1_components(graphs["plus-edge"])
    v.certificate = _certificate(base)
    v.decomposition = base
    v.add("K_{2,n-2}: T1 connected", base.num_components == 1, f"{base.num_components} components")
    v.add("minus edge (0,2): T1 disconnected", minus.num_components > 1, f"{minus.num_components} components")
    k = (n - 2) * (n - 3) // 2
    v.add(f"plus edge (0,1): T1 is {k} isolated vertices",
          plus.num_squares == 0 and plus.num_non_edges == k and plus.isolated_count == k,
          f"{plus.num_non_edges} vertices, {plus.num_squares} edges")
    return v
