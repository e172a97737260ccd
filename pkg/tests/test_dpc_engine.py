import random

import pytest

from bpdpc.dpc_engine import classify_case, dpc2_main, dpc2_solve, dpc2_two_two, dpc2_union
from bpdpc.errors import DomainError, NoPathFound, PreconditionError
from bpdpc.fault_model import FaultSet, Region
from bpdpc.graph_core import lift, make_edge, out_neighbor, prefix_reversal, signed_values, unrank
from bpdpc.suites import BRANCH_TAGS, branch_instance, random_fault, random_terminals, random_vertex
from bpdpc.verifier import oracle_dpc_exists, verify_dpc


def in_sub(rng, n, k, used):
    while True:
        w = random_vertex(rng, n, k)
        if w not in used:
            used.add(w)
            return w


def spread(rng, n, labels):
    used = set()
    u, v, x, y = (in_sub(rng, n, k, used) for k in labels)
    return (u, v), (x, y)


def test_main_n4_sizes(table):
    t = (((1, 2, 3, 4), (4, 3, 2, 1)), ((2, 1, 3, 4), (-1, 2, 3, 4)))
    d = dpc2_main(4, None, t)
    assert len(d.p) + len(d.q) == 384
    assert verify_dpc(Region.whole(4), d, t) is None


def test_main_n4_random(table):
    rng = random.Random(10)
    for _ in range(100):
        t = random_terminals(rng, 4)
        assert verify_dpc(Region.whole(4), dpc2_main(4, None, t), t) is None


def test_main_n4_all_four_in_one_subgraph(table):
    # all unsolvable BP_3 configurations, lifted into one subgraph of BP_4
    from bpdpc.base_solver import _BP3, _ID3

    for key in table.unsolvable():
        v, x, y = key
        t = tuple((lift(a, 4), lift(b, 4)) for a, b in ((_ID3, _BP3[v]), (_BP3[x], _BP3[y])))
        assert verify_dpc(Region.whole(4), dpc2_main(4, None, t), t) is None


@pytest.mark.parametrize("tag", BRANCH_TAGS)
def test_every_subcase_n5(tag, table):
    rng = random.Random(hash(tag) % 1000)
    for _ in range(3):
        F, t = branch_instance(rng, tag)
        assert classify_case(5, F, t) == tag
        d = dpc2_main(5, F, t)
        assert verify_dpc(Region.whole(5, F), d, t) is None


def test_subcase_2121_has_adjacent_pair(table):
    F, t = branch_instance(random.Random(1), "2.1.2.1")
    assert t[1][1] == out_neighbor(t[1][0])


def test_out_edge_fault_goes_through_union(table):
    rng = random.Random(12)
    for _ in range(10):
        F = random_fault(rng, 5, "out")
        t = random_terminals(rng, 5, F)
        assert classify_case(5, F, t) == "union"
        assert verify_dpc(Region.whole(5, F), dpc2_main(5, F, t), t) is None


def test_classify_examples():
    rng = random.Random(2)
    F = FaultSet(5, frozenset([lift(unrank(4, 7), 3)]))
    assert classify_case(5, F, spread(rng, 5, (3, 3, 3, 3))) == "1.1"
    assert classify_case(5, F, spread(rng, 5, (1, 1, 1, 1))) == "1.2"
    assert classify_case(5, F, spread(rng, 5, (1, 1, 1, 2))).startswith("2.1")
    assert classify_case(5, F, spread(rng, 5, (1, 2, 4, 5))) == "4.2"
    assert classify_case(5, F, spread(rng, 5, (1, 2, 3, 5))) == "4.1"
    assert classify_case(4, FaultSet(4), spread(rng, 4, (1, 1, 1, 1))) == "union"


def test_symmetric_pairings_give_reversed_paths(table):
    rng = random.Random(3)
    F = FaultSet(5, frozenset([lift(unrank(4, 11), -2)]))
    for tag in ("2.3", "3.2.1", "4.2"):
        _, t = branch_instance(rng, tag)
        for s in (t, (t[1], t[0]), ((t[0][1], t[0][0]), t[1])):
            if F.vertex_ok(s[0][0]) and all(F.vertex_ok(w) for p in s for w in p):
                assert verify_dpc(Region.whole(5, F), dpc2_main(5, F, s), s) is None


def test_deterministic(table):
    rng = random.Random(4)
    F, t = branch_instance(rng, "3.2.3")
    assert dpc2_main(5, F, t) == dpc2_main(5, F, t)


def test_main_preconditions():
    t = (((1, 2, 3, 4), (4, 3, 2, 1)), ((2, 1, 3, 4), (-1, 2, 3, 4)))
    with pytest.raises(PreconditionError):
        dpc2_main(4, FaultSet(4, frozenset([(3, 1, 2, 4)])), t)
    with pytest.raises(PreconditionError):
        dpc2_main(4, None, (t[0], (t[0][0], (3, 1, 2, 4))))
    with pytest.raises(DomainError):
        dpc2_main(4, FaultSet(5), t)
    with pytest.raises(PreconditionError):
        dpc2_main(3, None, (((1, 2, 3), (3, 2, 1)), ((2, 1, 3), (-1, 2, 3))))


def test_union_modes(table):
    rng = random.Random(5)
    R = Region(4, frozenset([1, 2, 3, 4, -1]), FaultSet(4))
    t = spread(rng, 4, (1, 2, 3, 4))
    assert verify_dpc(R, dpc2_union(R, t, mode=2), t) is None
    with pytest.raises(PreconditionError):
        dpc2_union(R, spread(rng, 4, (1, 1, 3, 4)), mode=2)
    with pytest.raises(PreconditionError):
        dpc2_union(R, t, mode=3)
    R6 = Region(4, frozenset([1, 2, 3, 4, -1, -2]), FaultSet(4))
    for labels in ((1, 1, 1, 1), (1, 1, 1, 2), (1, 2, 1, 2), (1, 1, 2, 3), (1, 2, 3, 4)):
        t = spread(rng, 4, labels)
        assert verify_dpc(R6, dpc2_union(R6, t), t) is None


def test_union_n5_spread_fault(table):
    rng = random.Random(6)
    R = Region(5, frozenset(signed_values(5)[:7]), FaultSet(5))
    F = random_fault(rng, 5, "out", 1)
    R = Region(5, R.labels, F)
    t = spread(rng, 5, (2, 2, 3, -1))
    if all(w in R for p in t for w in p):
        assert verify_dpc(R, dpc2_union(R, t), t) is None


@pytest.mark.parametrize("cross", [False, True])
def test_two_two_n4(cross, table):
    rng = random.Random(7)
    for _ in range(10):
        lab = (1, 3, 1, 3) if cross else (1, 1, 3, 3)
        t = spread(rng, 4, lab)
        assert verify_dpc(Region.whole(4), dpc2_two_two(4, None, t, k1=1), t) is None


def test_two_two_n5_with_fault(table):
    rng = random.Random(8)
    for lab in ((2, 2, -3, -3), (2, -3, 2, -3)):
        F = random_fault(rng, 5, "vertex", 2)
        t = spread(rng, 5, lab)
        if all(F.vertex_ok(w) for p in t for w in p):
            assert verify_dpc(Region.whole(5, F), dpc2_two_two(5, F, t), t) is None
    with pytest.raises(PreconditionError):
        dpc2_two_two(5, FaultSet(5), spread(rng, 5, (1, 1, 1, 3)))


def test_solve_n3_matches_oracle(table):
    rng = random.Random(9)
    for i in range(40):
        F = FaultSet(3) if i % 2 else random_fault(rng, 3, "vertex")
        t = random_terminals(rng, 3, F)
        R = Region.whole(3, F)
        try:
            d = dpc2_solve(3, F, t)
        except NoPathFound:
            assert not oracle_dpc_exists(R, t)
            continue
        assert verify_dpc(R, d, t) is None


def test_solve_n3_unsolvable_configuration(table):
    u = (1, 2, 3)
    t = ((u, (-1, -2, 3)), ((-2, 1, 3), (2, -1, 3)))
    with pytest.raises(NoPathFound):
        dpc2_solve(3, None, t)


def test_solve_dispatches_to_main(table):
    t = (((1, 2, 3, 4), (4, 3, 2, 1)), ((2, 1, 3, 4), (-1, 2, 3, 4)))
    assert dpc2_solve(4, None, t) == dpc2_main(4, None, t)


def test_n6_two_faults_in_one_subgraph(table):
    rng = random.Random(10)
    a = random_vertex(rng, 6, 5)
    F = FaultSet(6, frozenset([a]), frozenset([make_edge(prefix_reversal(a, 1), prefix_reversal(prefix_reversal(a, 1), 2))]))
    t = spread(rng, 6, (5, 5, 1, -2))
    if all(F.vertex_ok(w) for p in t for w in p):
        assert verify_dpc(Region.whole(6, F), dpc2_main(6, F, t), t) is None
