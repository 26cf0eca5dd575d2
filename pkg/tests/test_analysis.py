import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import cycle, graphs
from squareperc.analysis import (
    analysis_report,
    bonded_report,
    check_diagonal_bound,
    check_extremal_bound,
    components_by_bfs,
    count_nonbonded,
    is_bonded_characterization,
    is_bonded_definition,
    is_s_connected,
    is_t1_connected,
    second_largest_component_size,
    t1_components,
    t1_diameter,
    t1_diameter_at_most_two,
)
from squareperc.constructions import build_complete_bipartite, build_g
from squareperc.errors import CapExceededError, CompleteGraphError
from squareperc.graph import VertexPair, complete_graph, empty_graph, new_graph, num_pairs
from squareperc.oracles import bonded_by_definition
from squareperc.sampler import derive_trial_seed, sample_gnp
from squareperc.squares import InducedSquare, enumerate_squares

K23 = build_complete_bipartite(2, 3)
K24 = build_complete_bipartite(2, 4)


def test_components_c4(c4):
    d = t1_components(c4)
    assert d.sizes.tolist() == [2] and d.isolated_count == 0
    assert d.supports[0].tolist() == [0, 1, 2, 3]
    assert d.full_support_ids == [0]


def test_components_c5(c5):
    d = t1_components(c5)
    assert d.num_components == 5 and d.num_nontrivial == 0 and d.isolated_count == 5
    assert d.supports == {}


def test_components_g():
    d = t1_components(build_g())
    assert d.num_nontrivial == 2
    assert len(d.full_support_ids) == 2


def test_t1_connectivity_examples(c5):
    assert is_t1_connected(K24)
    assert not is_t1_connected(c5)
    plus = new_graph(6, K24.edges() + [VertexPair(0, 1)])
    assert not is_t1_connected(plus)
    assert t1_components(plus).num_components == 6
    with pytest.raises(CompleteGraphError):
        is_t1_connected(complete_graph(5))


def test_s_connectivity_examples(c4, two_c4):
    assert not is_s_connected(two_c4)
    assert is_s_connected(c4)
    assert not is_s_connected(build_g())


def test_second_largest_examples(c4, c5, two_c4):
    assert second_largest_component_size(t1_components(c4)) == 0
    assert second_largest_component_size(t1_components(c5)) == 1
    assert second_largest_component_size(t1_components(two_c4)) == 2


def test_diameter_examples(c4, c5):
    assert t1_diameter_at_most_two(K24)
    assert not t1_diameter_at_most_two(c5)
    assert t1_diameter_at_most_two(c4)
    assert t1_diameter(c4) == 1
    assert t1_diameter(K24) == 2
    assert t1_diameter(c5) == math.inf
    with pytest.raises(CompleteGraphError):
        t1_diameter(complete_graph(4))
    with pytest.raises(CapExceededError):
        t1_diameter_at_most_two(empty_graph(20), vertex_cap=10)


def test_bonded_examples(c4, two_c4):
    sq = enumerate_squares(c4)[0]
    assert not is_bonded_definition(c4, sq, [sq])
    assert not is_bonded_characterization(c4, sq)
    squares = enumerate_squares(K23)
    for s in squares:
        assert is_bonded_definition(K23, s, squares)
        assert is_bonded_characterization(K23, s)
    for s in enumerate_squares(two_c4):
        assert not is_bonded_definition(two_c4, s, enumerate_squares(two_c4))
        assert not is_bonded_characterization(two_c4, s)


def test_bonded_witness_k23():
    # vertex 4 is adjacent to both ends of diagonal (0, 1) and to neither of (2, 3)
    sq = InducedSquare(VertexPair(0, 1), VertexPair(2, 3))
    A = K23.dense()
    assert A[4, 0] and A[4, 1] and not A[4, 2] and not A[4, 3]
    assert is_bonded_characterization(K23, sq)


def test_bonded_report_examples(c4):
    r = bonded_report(K23)
    assert r.all_bonded and r.total_squares == 3
    r = bonded_report(c4)
    assert not r.all_bonded and r.non_bonded == enumerate_squares(c4)
    r = bonded_report(empty_graph(6))
    assert r.total_squares == 0 and r.all_bonded and r.vacuous


def test_bonded_report_list_cap():
    g = new_graph(12, [(a + i, b + i) for i in (0, 4, 8) for a, b in ((0, 1), (1, 2), (2, 3), (0, 3))])
    r = bonded_report(g, list_cap=2)
    assert r.non_bonded_count == 3 and len(r.non_bonded) == 2


def test_extremal_examples(c4):
    assert check_extremal_bound(c4) == []
    g = build_g()
    d = t1_components(g)
    assert check_extremal_bound(g, d) == []
    assert g.m == 88 and all(len(s) == 22 for s in d.supports.values())


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=20))
def test_union_find_matches_bfs(g):
    d = t1_components(g)
    uf = {frozenset(d.members(c)) for c in range(d.num_components)}
    assert uf == set(components_by_bfs(g))
    assert d.sizes.sum() == num_pairs(g.n) - g.m
    # ids follow the smallest member
    first = [d.labels.tolist().index(c) for c in range(d.num_components)]
    assert first == sorted(first)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=20))
def test_component_invariants(g):
    d = t1_components(g)
    assert check_diagonal_bound(d) == []
    assert check_extremal_bound(g, d) == []
    for cid, sup in d.supports.items():
        members = d.members(cid)
        assert sup.tolist() == sorted({v for f in members for v in f})


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=20))
def test_bonded_equivalence(g):
    squares = enumerate_squares(g)
    by_def = bonded_by_definition(squares)
    for sq in squares:
        assert by_def[sq] == is_bonded_characterization(g, sq)
    for sq in squares[:10]:
        assert is_bonded_definition(g, sq, squares) == by_def[sq]
    assert count_nonbonded(g) == sum(not b for b in by_def.values())


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=4, max_n=20))
def test_connectivity_relations(g):
    d = t1_components(g)
    if d.num_non_edges == 0:
        return
    if is_t1_connected(d) and d.num_squares > 0:
        assert is_s_connected(d)
    if d.num_nontrivial >= 2:
        assert not is_t1_connected(d)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=4, max_n=20))
def test_diameter_routes_agree(g):
    if g.num_non_edges == 0:
        return
    assert t1_diameter_at_most_two(g) == (t1_diameter(g) <= 2)


def test_s_connected_but_t1_disconnected_exists():
    # witnesses where isolated non-edges break T1 while S stays connected
    found = 0
    for t in range(200):
        n = 20 + t % 11
        g = sample_gnp(n, 0.5, derive_trial_seed(17, t))
        d = t1_components(g)
        if d.num_nontrivial == 1 and d.isolated_count > 0:
            found += 1
    assert found > 0


def test_degenerate_markers():
    assert "t1-empty" in t1_components(complete_graph(5)).markers
    single = new_graph(3, [(0, 1), (1, 2)])
    assert "t1-single" in t1_components(single).markers
    assert "s-trivial" in t1_components(single).markers
    for n in range(4):
        d = t1_components(empty_graph(n))
        assert d.num_squares == 0 and d.isolated_count == num_pairs(n)


def test_report_schema(c4):
    rep = analysis_report(c4)
    assert rep["numSquares"] == 1 and rep["t1Connected"] and rep["sConnected"]
    assert rep["schema_version"] == 1
    rep = analysis_report(build_g())
    assert rep["numNontrivial"] == 2 and len(rep["fullSupportComponentIds"]) == 2
    assert analysis_report(complete_graph(4))["markers"] == ["t1-empty", "s-trivial"]


def test_no_common_neighbour_count(c4, c5):
    from squareperc.analysis import count_no_common_neighbour

    assert count_no_common_neighbour(c4) == 0
    assert count_no_common_neighbour(empty_graph(5)) == 10
    # C5 chords share exactly one neighbour
    assert count_no_common_neighbour(c5) == 0
    assert count_no_common_neighbour(cycle(6)) == 3


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=2, max_n=20))
def test_no_common_neighbour_bounds_isolated(g):
    from squareperc.analysis import count_no_common_neighbour

    brute = sum(1 for u, v in combinations(range(g.n), 2)
                if not g.has_edge(u, v) and not any(g.has_edge(u, w) and g.has_edge(v, w) for w in range(g.n)))
    assert count_no_common_neighbour(g) == brute <= t1_components(g).isolated_count
