import random

import pytest

from bpdpc.base_solver import (
    TABLE_HEADER,
    TABLE_SIZE,
    Bp3Table,
    canonical_keys,
    dpc2_search,
    ham_cycle_search,
    ham_path_search,
    load_table,
    path_cover_search,
    save_table,
)
from bpdpc.errors import CorruptTableError, DomainError, NoPathFound, SearchBudgetExceeded, TableVersionError
from bpdpc.fault_model import FaultSet, Region
from bpdpc.graph_core import all_vertices, is_adjacent, make_edge, neighbors, prefix_reversal, signed_values
from bpdpc.verifier import verify_dpc, verify_ham_cycle, verify_ham_path, verify_path

BP3 = Region.whole(3)


def test_bp2_is_an_eight_cycle():
    R = Region.whole(2)
    C = ham_cycle_search(R)
    assert len(C) == 8 and verify_ham_cycle(R, C) is None
    u = (1, 2)
    v = prefix_reversal(u, 1)
    P = ham_path_search(R, u, v)
    assert len(P) == 8 and verify_ham_path(R, P, u, v) is None


def test_bp3_hamiltonian_connected():
    vs = list(all_vertices(3))
    for v in vs[1:]:
        P = ham_path_search(BP3, vs[0], v)
        assert verify_ham_path(BP3, P, vs[0], v) is None


def test_bp3_one_fault_is_hamiltonian():
    for w in all_vertices(3):
        R = Region.whole(3, FaultSet(3, frozenset([w])))
        C = ham_cycle_search(R)
        assert C is not None and len(C) == 47 and verify_ham_cycle(R, C) is None
    e = make_edge((1, 2, 3), (-3, -2, -1))
    R = Region.whole(3, FaultSet(3, frozenset(), frozenset([e])))
    assert len(ham_cycle_search(R)) == 48


def test_two_adjacent_faulty_vertices():
    u = (1, 2, 3)
    R = Region.whole(3, FaultSet(3, frozenset([u, prefix_reversal(u, 1)])))
    C = ham_cycle_search(R)
    assert C is None or verify_ham_cycle(R, C) is None
    assert (C is None) == (ham_cycle_search(R, prune=False) is None)


def test_dpc_example():
    t = (((1, 2, 3), (-1, 2, 3)), ((-2, -1, 3), (-3, -2, -1)))
    d = dpc2_search(BP3, *t[0], *t[1])
    assert verify_dpc(BP3, d, t) is None


def test_counterexample_edge_not_found_off_w():
    e = make_edge((1, 2, 3), (-3, -2, -1))
    R = Region.whole(3, FaultSet(3, frozenset(), frozenset([e])))
    u, x, w = (-1, 2, 3), (-2, -1, 3), (1, 2, 3)
    rest = [z for z in R.vertices() if z not in (u, x, w)]
    for v in rest[:6]:
        for y in rest[-6:]:
            if v != y:
                assert dpc2_search(R, u, v, x, y) is None


def test_four_vertex_path_is_forced():
    a = (1, 2)
    b = prefix_reversal(a, 1)
    c = prefix_reversal(b, 2)
    d = prefix_reversal(c, 1)
    others = [z for z in all_vertices(2) if z not in (a, b, c, d)]
    R = Region.whole(2, FaultSet(2, frozenset(others)))
    assert dpc2_search(R, a, b, c, d) == ((a, b), (c, d))


def test_search_errors():
    with pytest.raises(DomainError):
        ham_path_search(BP3, (1, 2, 3), (1, 2, 3))
    with pytest.raises(SearchBudgetExceeded):
        ham_path_search(Region.whole(4), (1, 2, 3, 4), (4, 3, 2, 1), budget=10)


def _random_subinstance(rng):
    n = rng.choice([2, 3, 3, 3])
    labels = frozenset(rng.sample(signed_values(n), rng.randint(2, min(4, 2 * n))))
    F = FaultSet(n)
    if n == 3 and rng.random() < 0.5:
        w = rng.choice(list(all_vertices(3)))
        F = FaultSet(3, frozenset([w])) if rng.random() < 0.5 else FaultSet(
            3, frozenset(), frozenset([make_edge(w, rng.choice(neighbors(w)))]))
    R = Region(n, labels, F)
    vs = list(R.vertices())
    return R, rng.sample(vs, 4)


def test_pruning_is_sound():
    rng = random.Random(7)
    for _ in range(150):
        R, (u, v, x, y) = _random_subinstance(rng)
        fast = dpc2_search(R, u, v, x, y)
        slow = dpc2_search(R, u, v, x, y, prune=False)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert verify_dpc(R, fast, ((u, v), (x, y))) is None
        fast = ham_path_search(R, u, v)
        assert (fast is None) == (ham_path_search(R, u, v, prune=False) is None)
        assert (ham_cycle_search(R) is None) == (ham_cycle_search(R, prune=False) is None)


def test_path_cover_three_pairs():
    vs = list(all_vertices(3))
    rng = random.Random(3)
    found = 0
    for _ in range(20):
        ends = rng.sample(vs, 6)
        pairs = [(ends[0], ends[1]), (ends[2], ends[3]), (ends[4], ends[5])]
        res = path_cover_search(BP3, pairs)
        if res is None:
            continue
        found += 1
        assert sum(len(p) for p in res) == 48
        for p, (a, b) in zip(res, pairs):
            assert p[0] == a and p[-1] == b
            assert all(is_adjacent(p[i], p[i + 1]) for i in range(len(p) - 1))
    assert found > 0


def test_canonical_keys_count():
    keys = canonical_keys()
    assert len(keys) == TABLE_SIZE == 47 * 46 * 45 // 2
    assert len(set(keys)) == len(keys)


def test_table_query_any_terminals(table):
    rng = random.Random(11)
    vs = list(all_vertices(3))
    ok = 0
    for _ in range(300):
        u, v, x, y = rng.sample(vs, 4)
        try:
            d = table.query(u, v, x, y)
        except NoPathFound:
            assert dpc2_search(BP3, u, v, x, y) is None
            continue
        ok += 1
        assert verify_dpc(BP3, d, ((u, v), (x, y))) is None
    assert ok > 250


def test_table_unsolved_keys_raise(table):
    for key in table.unsolvable():
        with pytest.raises(NoPathFound):
            table.canonical(key)


def test_save_load_round_trip(table, tmp_path):
    path = tmp_path / "t.txt"
    save_table(table, path)
    assert load_table(path) == table
    lines = path.read_text().split("\n")
    assert lines[0] == TABLE_HEADER
    assert len(lines) == TABLE_SIZE + 3


def test_load_rejects_bad_files(table, tmp_path):
    path = tmp_path / "t.txt"
    save_table(table, path)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(CorruptTableError):
        load_table(path)
    path.write_text(text.replace("BP3DPC v1", "BP3DPC v2", 1))
    with pytest.raises(TableVersionError):
        load_table(path)
    path.write_text(text.replace(" ; ", " ;  ", 1))
    with pytest.raises(CorruptTableError):
        load_table(path)


def test_load_reverifies_records(table, tmp_path):
    entries = dict(table.entries)
    key = next(k for k, e in sorted(entries.items()) if e is not None and len(e[0]) > 3)
    p, q = entries[key]
    entries[key] = (p[:-2] + p[-1:], q)  # drops a vertex
    path = tmp_path / "t.txt"
    save_table(Bp3Table(entries), path)
    with pytest.raises(CorruptTableError):
        load_table(path, sample_fraction=1.0)
