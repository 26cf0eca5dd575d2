from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import cycle, graphs
from squareperc.constructions import build_complete_bipartite, build_g
from squareperc.errors import EdgeCapExceededError, NotANonEdgeError, SquareCapExceededError, TooLargeError
from squareperc.graph import VertexPair, complete_graph, empty_graph, new_graph, non_edges
from squareperc.squares import (
    InducedSquare,
    build_s,
    build_t1,
    count_squares,
    enumerate_squares,
    enumerate_squares_bruteforce,
    square_array,
    t1_neighbors,
)

K23 = build_complete_bipartite(2, 3)
K24 = build_complete_bipartite(2, 4)


def _is_induced_square(g, sq):
    (a, b), (c, d) = sq.diag1, sq.diag2
    return (len({a, b, c, d}) == 4 and not g.has_edge(a, b) and not g.has_edge(c, d)
            and all(g.has_edge(x, y) for x in (a, b) for y in (c, d)))


def test_enumeration_examples(c4, c5):
    assert enumerate_squares(c4) == [InducedSquare(VertexPair(0, 2), VertexPair(1, 3))]
    assert enumerate_squares(complete_graph(4)) == []
    assert enumerate_squares(c5) == []
    assert len(enumerate_squares(K23)) == 3
    assert enumerate_squares_bruteforce(empty_graph(10)) == []


@pytest.mark.parametrize("g", [cycle(4), complete_graph(4), K23, K24, cycle(5), cycle(8)])
def test_bruteforce_agrees_on_small_graphs(g):
    assert enumerate_squares(g) == enumerate_squares_bruteforce(g)


def test_bruteforce_guard():
    with pytest.raises(TooLargeError):
        enumerate_squares_bruteforce(empty_graph(65))


def test_g_is_oracle_sized():
    g = build_g()
    assert enumerate_squares(g) == enumerate_squares_bruteforce(g)
    assert count_squares(g) == 165


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=25))
def test_fast_enumeration_matches_bruteforce(g):
    fast = enumerate_squares(g)
    assert fast == enumerate_squares_bruteforce(g)
    assert all(_is_induced_square(g, sq) for sq in fast)
    assert all(sq.key(g.n)[0] < sq.key(g.n)[1] for sq in fast)
    assert count_squares(g) == len(fast)


def test_word_boundaries():
    # squares straddling the 64-bit word boundary
    g = new_graph(130, [(0, 64), (64, 127), (127, 63), (63, 0), (1, 128), (128, 129), (129, 65), (65, 1)])
    assert {sq.vertices for sq in enumerate_squares(g)} == {(0, 63, 64, 127), (1, 65, 128, 129)}


def test_t1_neighbors_examples(c4, c5):
    assert t1_neighbors(c4, (0, 2)) == [(1, 3)]
    assert t1_neighbors(K23, (0, 1)) == [(2, 3), (2, 4), (3, 4)]
    for f in non_edges(c5):
        assert t1_neighbors(c5, f) == []
    with pytest.raises(NotANonEdgeError):
        t1_neighbors(c4, (0, 1))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=16))
def test_t1_handshake_and_symmetry(g):
    nbrs = {f: set(t1_neighbors(g, f)) for f in non_edges(g)}
    assert sum(len(v) for v in nbrs.values()) == 2 * count_squares(g)
    assert all(f in nbrs[h] for f, hs in nbrs.items() for h in hs)


def test_build_t1_examples(c4):
    t1 = build_t1(K24, materialize=True)
    assert t1.num_vertices == 7 and t1.num_edges == 6
    centre = t1.ordinal((0, 1))
    assert sorted(t1.degrees().tolist()) == [1] * 6 + [6]
    assert t1.degrees()[centre] == 6
    e = build_t1(empty_graph(6), materialize=True)
    assert e.num_vertices == 15 and e.num_edges == 0
    c = build_t1(c4, materialize=True)
    assert c.num_vertices == 2 and c.num_edges == 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=20))
def test_materialised_and_lazy_views_agree(g):
    lazy, full = build_t1(g), build_t1(g, materialize=True)
    assert lazy.num_vertices == full.num_vertices == g.num_non_edges
    for i in range(lazy.num_vertices):
        assert sorted(lazy.neighbors(i)) == full.neighbors(i)


def test_caps():
    with pytest.raises(EdgeCapExceededError):
        build_t1(K24, materialize=True, edge_cap=5)
    with pytest.raises(SquareCapExceededError):
        square_array(K24, cap=5)
    with pytest.raises(SquareCapExceededError):
        build_s(K24, square_cap=5)


def test_build_s_examples(c4, two_c4):
    s = build_s(c4)
    assert s.num_vertices == 1 and s.num_edges == 0
    s = build_s(K23)
    assert s.num_vertices == 3 and s.edges == [(0, 1), (0, 2), (1, 2)]
    s = build_s(two_c4)
    assert s.num_vertices == 2 and s.num_edges == 0


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=20))
def test_line_graph_law(g):
    s = build_s(g)
    deg = build_t1(g, materialize=True).degrees()
    assert s.num_edges == int((deg * (deg - 1) // 2).sum())
    for i, j in s.edges:
        a, b = s.squares[i], s.squares[j]
        assert {a.diag1, a.diag2} & {b.diag1, b.diag2}
