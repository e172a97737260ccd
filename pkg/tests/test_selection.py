import random

import pytest
from hypothesis import given, strategies as st

from bpdpc.base_solver import ham_cycle_search, ham_path_search
from bpdpc.errors import DomainError, PreconditionError
from bpdpc.fault_model import FaultSet, Region
from bpdpc.graph_core import (
    all_edges,
    all_vertices,
    cross_pairs,
    identity,
    lift,
    is_adjacent,
    neighbors,
    out_neighbor,
    rank,
    signed_values,
)
from bpdpc.ham_engine import ham_cycle, ham_path
from bpdpc.selection import (
    discordant_neighbors,
    iter_cycle_edges,
    iter_dpc_edges,
    iter_out_vertices,
    order_labels,
    pick_chain_edges,
    pick_cycle_edge,
    pick_dpc_edge,
    pick_out_vertex,
    split_cycle_discordant,
)
from bpdpc.suites import random_fault, merge


def _sub_path(n, k):
    if n - 1 >= 4:
        P = ham_path(n - 1, None, identity(n - 1), out_neighbor(identity(n - 1)))
        return [lift(w, k) for w in P]
    R = Region(n, frozenset([k]), FaultSet(n))
    vs = list(R.vertices())
    return list(ham_path_search(R, vs[0], vs[-1]))


def _sub_cycle(n, k):
    if n - 1 >= 4:
        return [lift(w, k) for w in ham_cycle(n - 1)]
    return list(ham_cycle_search(Region(n, frozenset([k]), FaultSet(n))))


def _clean(F, a, b):
    return F.vertex_ok(a) and F.vertex_ok(b) and F.edge_ok(a, b)


def check_dpc_pick(p, cover, k1, k2, avoid, F):
    path = cover[p.path_index]
    assert {p.a, p.b} == {path[p.pos], path[p.pos + 1]}
    assert p.a_out == out_neighbor(p.a) and p.b_out == out_neighbor(p.b)
    assert _clean(F, p.a, p.a_out) and _clean(F, p.b, p.b_out)
    if k2 is not None:
        assert p.a_out[-1] == k2
    assert p.b_out[-1] == p.k3
    assert p.k3 not in (k1, -k1, p.a_out[-1])
    assert p.a_out != p.b_out
    assert not {p.a, p.b, p.a_out, p.b_out} & set(avoid)


def check_cycle_pick(p, C, k1, k2, avoid, F):
    assert {p.a, p.b} == {C[p.pos], C[(p.pos + 1) % len(C)]}
    assert _clean(F, p.a, p.a_out) and _clean(F, p.b, p.b_out)
    assert p.k3 == p.a_out[-1] and p.k4 == p.b_out[-1] and p.k3 != p.k4
    assert not {p.k3, p.k4} & {k1, -k1, k2}
    assert not {p.a, p.b, p.a_out, p.b_out} & set(avoid)


def _outside_faults(n, k1):
    yield FaultSet(n)
    for w in all_vertices(n):
        if w[-1] != k1:
            yield FaultSet(n, frozenset([w]))
    for e in all_edges(n):
        if e[0][-1] != k1 or e[1][-1] != k1:
            yield FaultSet(n, frozenset(), frozenset([e]))


def test_dpc_and_cycle_picks_exhaustive_n4():
    k1 = 4
    P = _sub_path(4, k1)
    C = _sub_cycle(4, k1)
    avoid = (P[0], P[-1])
    for F in _outside_faults(4, k1):
        for k2 in signed_values(4):
            if k2 in (k1, -k1):
                continue
            picks = list(iter_dpc_edges([P], k1, k2, avoid, F))
            assert picks
            for p in picks:
                check_dpc_pick(p, [P], k1, k2, avoid, F)
            cpicks = list(iter_cycle_edges(C, k1, k2, avoid[:1], F))
            assert cpicks
            for p in cpicks:
                check_cycle_pick(p, C, k1, k2, avoid[:1], F)


def test_out_vertex_picks_exhaustive_n4():
    k1 = 4
    for F in _outside_faults(4, k1):
        for k2 in (1, 2, -2, 3):
            a = pick_out_vertex(4, k1, k2, (), F)
            assert a[-1] == k1 and out_neighbor(a)[-1] == k2 and _clean(F, a, out_neighbor(a))


def test_picks_random_n5():
    rng = random.Random(5)
    for k1 in (5, -3):
        P = _sub_path(5, k1)
        C = _sub_cycle(5, k1)
        for _ in range(40):
            F = merge(*(random_fault(rng, 5, rng.choice(["vertex", "inner", "out"]))
                        for _ in range(2)))
            if any(not F.vertex_ok(w) for w in P) or any(
                    not F.edge_ok(a, b) for a, b in zip(P, P[1:])):
                continue
            avoid = rng.sample(P, 4)
            k2 = rng.choice([k for k in signed_values(5) if k not in (k1, -k1)])
            check_dpc_pick(pick_dpc_edge([P], k1, k2, avoid, F), [P], k1, k2, avoid, F)
            check_dpc_pick(pick_dpc_edge([P], k1, None, avoid, F), [P], k1, None, avoid, F)
            if all(F.vertex_ok(w) for w in C):
                check_cycle_pick(pick_cycle_edge(C, k1, k2, avoid[:2], F), C, k1, k2, avoid[:2], F)


def test_pick_preconditions():
    P = _sub_path(4, 4)
    with pytest.raises(PreconditionError):
        pick_dpc_edge([P], 4, -4, (), FaultSet(4))
    with pytest.raises(PreconditionError):
        pick_out_vertex(4, 4, -4, (), FaultSet(4))
    with pytest.raises(PreconditionError):
        list(iter_dpc_edges([], 3, 1, (), FaultSet(3)))


def test_pick_out_vertex_smallest_id():
    cands = [a for a, _ in cross_pairs(4, 4, 1)]
    assert len(cands) == 8
    assert pick_out_vertex(4, 4, 1, (), FaultSet(4)) == min(cands, key=rank)


def test_pick_out_vertex_respects_extra_fault():
    for w in list(all_vertices(4))[::17]:
        if w[-1] != 4:
            continue
        for a in iter_out_vertices(4, 4, 2, (), FaultSet(4), ("v", w)):
            assert a not in neighbors(w)
        e = (w, neighbors(w)[0])
        for a in iter_out_vertices(4, 4, 2, (), FaultSet(4), ("e", e)):
            assert a not in e


def _valid_order(order, labels, first, last):
    return (sorted(order) == sorted(labels) and order[0] == first and order[-1] == last
            and all(a != -b for a, b in zip(order, order[1:])))


def test_order_labels_example():
    labels = [1, -1, 2, -2, 3]
    assert _valid_order(order_labels(labels, 1, -1), labels, 1, -1)


@given(st.integers(3, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(signed_values(n)), min_size=5))),
    st.data())
def test_order_labels_property(nl, data):
    n, labels = nl
    labels = sorted(labels)
    first, last = data.draw(st.permutations(labels))[:2]
    order = order_labels(labels, first, last)
    assert _valid_order(order, labels, first, last)
    assert order == order_labels(labels, first, last)


def test_order_labels_errors():
    with pytest.raises(PreconditionError):
        order_labels([1, 2, 3, 4], 1, 2)
    with pytest.raises(DomainError):
        order_labels([1, 2, 3, 4, 5], 1, 1)
    with pytest.raises(DomainError):
        order_labels([1, 2, 3, 4, 5], 1, 6)


def test_chain_edges_n4():
    order = order_labels(signed_values(4), 1, 4)
    reserved = {(1, 2, 3, 4), (2, 3, 4, 1)}
    edges = pick_chain_edges(order, FaultSet(4), reserved)
    assert len(edges) == 7
    ends = [w for e in edges for w in e]
    assert len(set(ends)) == 14 and not set(ends) & reserved
    for (a, b), k, k_next in zip(edges, order, order[1:]):
        assert a[-1] == k and b[-1] == k_next and out_neighbor(a) == b


def test_chain_edges_random_reserved():
    rng = random.Random(1)
    vs = list(all_vertices(4))
    for _ in range(200):
        reserved = set(rng.sample(vs, 4))
        order = order_labels(signed_values(4), 2, -3)
        ends = {w for e in pick_chain_edges(order, FaultSet(4), reserved) for w in e}
        assert not ends & reserved


def test_discordant_on_eight_cycle():
    C = _sub_cycle(3, 3)
    assert len(C) == 8
    a, b = discordant_neighbors(C, C[0], C[3])
    assert (a, b) in ((C[7], C[4]), (C[1], C[2]))
    a, b = discordant_neighbors(C, C[0], C[1])
    assert (a, b) == (C[7], C[2])
    with pytest.raises(DomainError):
        discordant_neighbors(C, C[0], (9, 9, 9))


@given(st.integers(0, 7), st.integers(1, 7))
def test_split_cycle_discordant(i, d):
    C = _sub_cycle(3, 3)
    u, v = C[i], C[(i + d) % 8]
    a, b = discordant_neighbors(C, u, v)
    P, Q = split_cycle_discordant(C, u, v)
    assert (P[0], P[-1], Q[0], Q[-1]) == (u, v, a, b)
    assert sorted(P + Q) == sorted(C)
    assert all(is_adjacent(p[j], p[j + 1]) for p in (P, Q) for j in range(len(p) - 1))
