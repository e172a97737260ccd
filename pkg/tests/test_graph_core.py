import itertools

import pytest
from hypothesis import given, strategies as st

from bpdpc.errors import DomainError
from bpdpc.graph_core import (
    all_vertices,
    cross_edges,
    cross_pairs,
    distance,
    format_edge,
    format_vertex,
    girth,
    identity,
    inverse,
    is_cycle,
    lift,
    make_edge,
    neighbors,
    num_edges,
    num_vertices,
    out_neighbor,
    parse_edge,
    parse_vertex,
    prefix_reversal,
    project,
    rank,
    signed_values,
    subgraph_label,
    translate,
    unrank,
)
from bpdpc.suites import NINE_CYCLE


def vertices(n):
    return st.integers(0, num_vertices(n) - 1).map(lambda i: unrank(n, i))


def test_neighbors_of_identity():
    assert neighbors((1, 2, 3)) == [(-1, 2, 3), (-2, -1, 3), (-3, -2, -1)]


def test_neighbors_count_n5():
    assert len(neighbors(unrank(5, 1234))) == 5


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_regular_and_involution(n):
    for u in all_vertices(n):
        nb = neighbors(u)
        assert len(set(nb)) == n and u not in nb
        for i in range(1, n + 1):
            assert prefix_reversal(prefix_reversal(u, i), i) == u
            assert u in neighbors(prefix_reversal(u, i))


def test_subgraph_label():
    assert subgraph_label((1, -2, 3)) == 3
    assert subgraph_label((-3, -2, -1)) == -1


@given(vertices(4), st.integers(1, 3))
def test_inner_reversal_keeps_label(u, i):
    assert subgraph_label(prefix_reversal(u, i)) == subgraph_label(u)


def test_out_neighbor_examples():
    assert out_neighbor((1, 2, 3)) == (-3, -2, -1)
    assert out_neighbor((-1, 2, 3)) == (-3, -2, 1)


@given(vertices(5))
def test_out_neighbor_involution(u):
    w = out_neighbor(u)
    assert out_neighbor(w) == u
    assert subgraph_label(w) == -u[0]


def test_cross_edges_examples():
    assert cross_edges(3, 3, 1) == [make_edge((-1, 2, 3), (-3, -2, 1)),
                                    make_edge((-1, -2, 3), (-3, 2, 1))]
    assert cross_edges(4, 1, -1) == []
    assert len(cross_edges(4, 1, 2)) == 8
    with pytest.raises(DomainError):
        cross_edges(3, 2, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_pairs_form_a_matching(n):
    for i in signed_values(n):
        for j in signed_values(n):
            if i == j:
                continue
            pairs = cross_pairs(n, i, j)
            ends = [a for a, _ in pairs] + [b for _, b in pairs]
            assert len(set(ends)) == len(ends)
            assert all(a[-1] == i and b[-1] == j and out_neighbor(a) == b for a, b in pairs)


def test_distance_examples():
    u = (1, 2, 3)
    assert distance(u, u) == 0
    assert distance(u, (-1, 2, 3)) == 1
    assert distance((-1, 2, 3), (-2, -1, 3)) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rank_bijection(n):
    ids = [rank(u) for u in all_vertices(n)]
    assert ids == list(range(num_vertices(n)))
    assert all(unrank(n, i) == u for i, u in zip(ids, all_vertices(n)))


def test_rank_range_errors():
    with pytest.raises(DomainError):
        unrank(3, 48)


def test_counts():
    for n in range(1, 6):
        assert num_vertices(n) == len(list(all_vertices(n)))
        assert num_edges(n) == n * num_vertices(n) // 2


def test_translate_is_automorphism_n3():
    for g, u in itertools.product(all_vertices(3), repeat=2):
        for i in (1, 2, 3):
            assert translate(g, prefix_reversal(u, i)) == prefix_reversal(translate(g, u), i)


@given(vertices(5))
def test_inverse_translates_to_identity(w):
    assert translate(inverse(w), w) == identity(5)
    assert translate(identity(5), w) == w


@given(vertices(5))
def test_project_lift_round_trip(u):
    assert lift(project(u), u[-1]) == u


@given(vertices(5), st.integers(1, 4))
def test_project_preserves_inner_adjacency(u, i):
    assert project(prefix_reversal(u, i)) == prefix_reversal(project(u), i)


def test_text_formats():
    assert format_vertex((-3, 2, -1)) == "-3 2 -1"
    assert parse_vertex("-3 2 -1") == (-3, 2, -1)
    e = make_edge((1, 2, 3), (-3, -2, -1))
    assert parse_edge(format_edge(e)) == e
    for bad in ("1 2 2", "1 x 3", "0 1 2", ""):
        with pytest.raises(DomainError):
            parse_vertex(bad)
    with pytest.raises(DomainError):
        parse_edge("1 2 3 | 2 1 3")


def test_girth():
    for n in (2, 3, 4):
        assert girth(n) == 8


def test_nine_cycle():
    assert is_cycle(NINE_CYCLE)
    assert len(NINE_CYCLE) == 9
