from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, graphs
from squareperc.errors import (
    DuplicateEdgeError,
    DuplicateVertexError,
    EmptyQuerySetError,
    OutOfRangeError,
    ParseError,
    SelfLoopError,
)
from squareperc.graph import (
    VertexPair,
    bits_to_vertices,
    common_neighbors,
    complement,
    complete_graph,
    empty_graph,
    format_edge_list,
    from_dense,
    induced_edge_count,
    induced_subgraph,
    new_graph,
    non_edges,
    num_pairs,
    pair_index,
    pair_of_index,
    pairs_of_indices,
    parse_edge_list,
)


def test_new_graph_cycle(c4):
    assert c4.n == 4 and c4.m == 4
    assert c4.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_new_graph_empty():
    g = new_graph(3, [])
    assert g.m == 0 and g.num_non_edges == 3


def test_new_graph_rejects_bad_edges():
    with pytest.raises(SelfLoopError):
        new_graph(4, [(0, 1), (2, 2)])
    with pytest.raises(OutOfRangeError):
        new_graph(4, [(0, 4)])
    with pytest.raises(DuplicateEdgeError):
        new_graph(4, [(0, 1), (1, 0)])


def test_complement_examples(c4):
    assert complement(empty_graph(5)) == complete_graph(5)
    assert complement(empty_graph(5)).m == 10
    assert complement(c4).edges() == [(0, 2), (1, 3)]


def test_common_neighbors_examples(c4):
    k23 = new_graph(5, [(x, y) for x in (0, 1) for y in (2, 3, 4)])
    assert bits_to_vertices(common_neighbors(k23, [0, 1]), 5) == [2, 3, 4]
    assert bits_to_vertices(common_neighbors(empty_graph(6), [1, 4]), 6) == []
    assert bits_to_vertices(common_neighbors(c4, [0, 2]), 4) == [1, 3]
    with pytest.raises(EmptyQuerySetError):
        common_neighbors(c4, [])
    with pytest.raises(OutOfRangeError):
        common_neighbors(c4, [7])


def test_non_edges_examples(c4, c5):
    assert non_edges(complete_graph(4)) == []
    assert non_edges(c4) == [(0, 2), (1, 3)]
    assert len(non_edges(c5)) == 5


def test_induced_subgraph_examples(c5):
    k5 = complete_graph(5)
    sub, _ = induced_subgraph(k5, [4, 0, 2])
    assert sub == complete_graph(3)
    sub, index = induced_subgraph(c5, [0, 1, 2, 3])
    assert sub.edges() == [(0, 1), (1, 2), (2, 3)] and index == [0, 1, 2, 3]
    same, _ = induced_subgraph(c5, range(5))
    assert same == c5
    with pytest.raises(DuplicateVertexError):
        induced_subgraph(c5, [0, 0])


def test_pair_index_examples():
    assert pair_index((0, 1), 7) == 0
    assert pair_index((5, 6), 7) == num_pairs(7) - 1
    assert pair_index((1, 3), 5) == 5
    assert pair_of_index(5, 5) == VertexPair(1, 3)


@given(st.integers(2, 64))
def test_pair_index_bijection(n):
    pairs = list(combinations(range(n), 2))
    assert [pair_index(p, n) for p in pairs] == list(range(num_pairs(n)))
    assert all(pair_of_index(i, n) == p for i, p in enumerate(pairs))
    a, b = pairs_of_indices(np.arange(num_pairs(n)), n)
    assert list(zip(a.tolist(), b.tolist())) == pairs


@given(graphs(max_n=40))
def test_adjacency_invariants(g):
    A = g.dense()
    assert (A == A.T).all() and not A.diagonal().any()
    assert g.m == A.sum() // 2
    # padding bits beyond n are never set
    assert sum(bin(int(w)).count("1") for w in g.adj.ravel()) == 2 * g.m


@given(graphs(max_n=40))
def test_complement_involution(g):
    h = complement(g)
    assert complement(h) == g
    assert g.m + h.m == num_pairs(g.n)


@given(graphs(min_n=2, max_n=30))
def test_common_neighbour_symmetry(g):
    for u, v in combinations(range(g.n), 2):
        in_u = v in bits_to_vertices(common_neighbors(g, [u]), g.n)
        in_v = u in bits_to_vertices(common_neighbors(g, [v]), g.n)
        assert in_u == in_v == g.has_edge(u, v)


@given(graphs(max_n=12), st.data())
def test_induced_edge_count_bruteforce(g, data):
    s = data.draw(st.lists(st.integers(0, max(g.n - 1, 0)), unique=True, max_size=g.n)) if g.n else []
    want = sum(g.has_edge(u, v) for u, v in combinations(s, 2))
    assert induced_edge_count(g, s) == want
    assert induced_subgraph(g, s)[0].m == want


def test_from_dense_roundtrip():
    g = cycle(70)  # spans two words per row
    assert from_dense(g.dense()) == g


# -- edge-list format --------------------------------------------------------


@given(graphs(max_n=30))
def test_edge_list_roundtrip(g):
    text = format_edge_list(g)
    assert parse_edge_list(text) == g
    assert format_edge_list(parse_edge_list(text)) == text


def test_edge_list_layout(c4):
    assert format_edge_list(c4) == "4 4\n0 1\n0 3\n1 2\n2 3\n"
    assert format_edge_list(empty_graph(4)) == "4 0\n"


def test_edge_list_comments_and_blanks():
    assert parse_edge_list("# header\n\n4 1\n# edge\n0 1\n") == new_graph(4, [(0, 1)])


@pytest.mark.parametrize(
    "text, line",
    [
        ("4 x\n", 1),
        ("", 0),
        ("4 1\n1 0\n", 2),
        ("4 2\n0 1\n0 1\n", 3),
        ("4 2\n0 2\n0 1\n", 3),
        ("4 1\n0 9\n", 2),
        ("4 2\n0 1\n", 0),
        ("4 1\n0 1 2\n", 2),
        ("4 1\n2 2\n", 2),
    ],
)
def test_edge_list_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    if line:
        assert info.value.line == line
