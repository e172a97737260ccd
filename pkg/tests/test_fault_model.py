import pytest

from bpdpc.errors import DomainError
from bpdpc.fault_model import (
    FaultSet,
    Region,
    faults_in_subgraph,
    is_fault_free_edge,
    is_fault_free_vertex,
    live_neighbors,
)
from bpdpc.graph_core import all_vertices, make_edge, neighbors, signed_values

W = (1, 2, 3)
W_OUT = (-3, -2, -1)


def test_empty_faults():
    F = FaultSet.empty(3)
    assert not F and F.size() == 0
    assert all(is_fault_free_vertex(F, u) for u in all_vertices(3))
    assert all(faults_in_subgraph(F, k) == 0 for k in signed_values(3))


def test_faulty_vertex_kills_incident_edges():
    F = FaultSet(3, frozenset([W]))
    assert not is_fault_free_vertex(F, W)
    assert all(not is_fault_free_edge(F, W, z) for z in neighbors(W))


def test_faulty_edge():
    F = FaultSet(3, frozenset(), frozenset([make_edge(W, W_OUT)]))
    assert is_fault_free_vertex(F, W)
    assert not is_fault_free_edge(F, W, W_OUT)
    assert not is_fault_free_edge(F, W_OUT, W)
    assert is_fault_free_edge(F, W, (-1, 2, 3))


def test_edge_query_requires_adjacency():
    with pytest.raises(DomainError):
        is_fault_free_edge(FaultSet(3), W, (2, 1, 3))


def test_live_neighbors_examples():
    assert len(live_neighbors(Region.whole(3), W)) == 3
    R = Region.whole(3, FaultSet(3, frozenset(), frozenset([make_edge(W, W_OUT)])))
    assert set(live_neighbors(R, W)) == {(-1, 2, 3), (-2, -1, 3)}
    R = Region(3, frozenset([3]), FaultSet(3))
    assert all(z[-1] == 3 for z in live_neighbors(R, (1, -2, 3)))
    with pytest.raises(DomainError):
        live_neighbors(R, W_OUT)


def test_removed_vertex_drops_n_edges():
    for w in all_vertices(3):
        R = Region.whole(3, FaultSet(3, frozenset([w])))
        lost = sum(3 - len(live_neighbors(R, z)) for z in R.vertices())
        assert lost == 3


def test_faults_in_subgraph():
    F = FaultSet(3, frozenset([W_OUT]))
    assert faults_in_subgraph(F, -1) == 1
    assert sum(faults_in_subgraph(F, k) for k in signed_values(3)) == 1
    F = FaultSet(3, frozenset(), frozenset([make_edge(W, W_OUT)]))
    assert all(faults_in_subgraph(F, k) == 0 for k in signed_values(3))
    assert F.out_edge_faults() == [make_edge(W, W_OUT)]


def test_text_round_trip():
    F = FaultSet(4, frozenset([(1, 2, 4, 3)]), frozenset([make_edge((1, 2, 3, 4), (-1, 2, 3, 4))]))
    assert FaultSet.from_text(4, F.to_text()) == F
    assert FaultSet.from_text(4, "# comment\n\nv 1 2 4 3\ne 1 2 3 4 | -1 2 3 4\n") == F
    with pytest.raises(DomainError):
        FaultSet.from_text(4, "x 1 2 3 4\n")


def test_restrict_projects_inner_faults():
    F = FaultSet(4, frozenset([(1, 2, 3, 4)]),
                 frozenset([make_edge((2, 1, 3, 4), (-2, 1, 3, 4)),
                            make_edge((2, 3, 1, 4), (-4, -1, -3, -2))]))
    G = F.restrict(4)
    assert G.n == 3 and G.vertices == {(1, 2, 3)} and len(G.edges) == 1


def test_region_drops_outside_faults():
    F = FaultSet(3, frozenset([W, W_OUT]))
    R = Region(3, frozenset([3]), F)
    assert R.faults.vertices == {W}
    assert W not in R and (1, -2, 3) in R
    assert len(list(R.vertices())) == 7
    with pytest.raises(DomainError):
        Region(3, frozenset([4]), FaultSet(3))
