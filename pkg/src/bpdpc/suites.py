"""Sweep suites and instance generators shared by the CLI and the acceptance tests.

Every suite returns a list of :class:`Check` records, one per property, so
callers can print a pass/fail table or assert on individual lines.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable

from .base_solver import Bp3Table, build_bp3_table, dpc2_search, get_table
from .dpc_engine import classify_case, dpc2_main, dpc2_solve
from .errors import ConstructionError, DomainError, NoPathFound
from .fault_model import FaultSet, Region
from .graph_core import (
    all_edges,
    all_vertices,
    cross_pairs,
    distance,
    girth,
    is_cycle,
    lift,
    make_edge,
    neighbors,
    num_edges,
    num_vertices,
    out_neighbor,
    prefix_reversal,
    signed_values,
    unrank,
)
from .ham_engine import ham_cycle, ham_path
from .verifier import (
    check_blocking,
    counterexample,
    oracle_dpc_exists,
    verify_dpc,
    verify_ham_cycle,
    verify_ham_path,
)

BRANCH_TAGS = ("1.1", "1.2", "2.1.1", "2.1.2.1", "2.1.2.2", "2.2", "2.3",
               "3.1", "3.2.1", "3.2.2", "3.2.3", "4.1", "4.2")

NINE_CYCLE = ((1, 2, 3), (-2, -1, 3), (-3, 1, 2), (3, 1, 2), (-1, -3, 2),
              (-2, 3, 1), (2, 3, 1), (-3, -2, 1), (-1, 2, 3))


@dataclass
class Check:
    name: str
    passed: int = 0
    total: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total

    def tally(self, good: bool, note: str | None = None) -> None:
        self.total += 1
        if good:
            self.passed += 1
        elif note and len(self.notes) < 5:
            self.notes.append(note)

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        text = f"{mark} {self.name}: {self.passed}/{self.total}"
        if self.notes:
            text += " (" + "; ".join(self.notes) + ")"
        return text


# ---------------------------------------------------------------------------
# instance generators
# ---------------------------------------------------------------------------

def random_vertex(rng: random.Random, n: int, label: int | None = None):
    if label is None:
        return unrank(n, rng.randrange(num_vertices(n)))
    return lift(unrank(n - 1, rng.randrange(num_vertices(n - 1))), label)


def _fresh(rng, n, F, used, label=None):
    while True:
        w = random_vertex(rng, n, label)
        if w not in used and F.vertex_ok(w):
            used.add(w)
            return w


def random_terminals(rng: random.Random, n: int, F: FaultSet | None = None):
    F = F or FaultSet(n)
    used: set = set()
    u, v, x, y = (_fresh(rng, n, F, used) for _ in range(4))
    return (u, v), (x, y)


def random_fault(rng: random.Random, n: int, kind: str, label: int | None = None,
                 avoid=()) -> FaultSet:
    """One faulty element: 'vertex', 'inner' edge (inside a subgraph) or 'out' edge."""
    while True:
        a = random_vertex(rng, n, label)
        if a in avoid:
            continue
        if kind == "vertex":
            return FaultSet(n, frozenset([a]))
        i = n if kind == "out" else rng.randint(1, n - 1)
        return FaultSet(n, frozenset(), frozenset([make_edge(a, prefix_reversal(a, i))]))


def merge(*sets: FaultSet) -> FaultSet:
    n = sets[0].n
    return FaultSet(n, frozenset().union(*(s.vertices for s in sets)),
                    frozenset().union(*(s.edges for s in sets)))


def branch_instance(rng: random.Random, tag: str, n: int = 5):
    """A (F, t) with one fault that classify_case sends to subcase ``tag``."""
    if tag not in BRANCH_TAGS:
        raise DomainError(f"unknown subcase {tag!r}")
    labels = signed_values(n)
    for _ in range(1000):
        ks = rng.choice(labels)
        others = [k for k in labels if k != ks]
        rng.shuffle(others)
        k1, k2, k3, k4 = others[:4]
        pattern = {
            "1.1": (ks, ks, ks, ks),
            "1.2": (k1, k1, k1, k1),
            "2.1.1": (k1, k1, k1, rng.choice([ks, k2])),
            "2.1.2.1": (ks, ks, ks, None),
            "2.1.2.2": (ks, ks, ks, k1),
            "2.2": (k1, k1, k2, k2) if rng.random() < 0.5 else (ks, ks, k1, k1),
            "2.3": (k1, k2, k1, k2) if rng.random() < 0.5 else (ks, k1, ks, k1),
            "3.1": (k1, k1, k2, k3) if rng.random() < 0.5 else (ks, ks, k1, k2),
            "3.2.1": (k1, k2, k1, k3),
            "3.2.2": (ks, k1, ks, k2),
            "3.2.3": (k1, ks, k1, k2),
            "4.1": (ks, k1, k2, k3),
            "4.2": (k1, k2, k3, k4),
        }[tag]
        used: set = set()
        F0 = FaultSet(n)
        u, v, x = (_fresh(rng, n, F0, used, k) for k in pattern[:3])
        if pattern[3] is None:
            y = out_neighbor(x)
            if y in used:
                continue
            used.add(y)
        else:
            y = _fresh(rng, n, F0, used, pattern[3])
            if tag == "2.1.2.2" and y == out_neighbor(x):
                continue
        kind = rng.choice(["vertex", "inner"])
        F = random_fault(rng, n, kind, ks, avoid=used)
        if any(not F.vertex_ok(w) for w in used):
            continue
        if kind == "inner" and any(w in used for e in F.edges for w in e):
            pass  # terminals may touch a faulty edge
        t = ((u, v), (x, y))
        if classify_case(n, F, t) == tag:
            return F, t
    raise ConstructionError(f"could not generate an instance for subcase {tag}")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_structure(seed: int = 0, samples: int = 10_000) -> list[Check]:
    rng = random.Random(seed)
    checks = []

    c = Check("vertex and edge counts, n = 1..5")
    for n in range(1, 6):
        vs = list(all_vertices(n))
        c.tally(len(vs) == num_vertices(n) == len(set(vs)), f"|V(BP_{n})|")
        c.tally(sum(1 for _ in all_edges(n)) == num_edges(n) == n * num_vertices(n) // 2,
                f"|E(BP_{n})|")
    checks.append(c)

    c = Check("regularity and reversal involution, n <= 4")
    for n in range(1, 5):
        for u in all_vertices(n):
            nb = neighbors(u)
            good = len(set(nb)) == n and u not in nb
            good = good and all(prefix_reversal(prefix_reversal(u, i), i) == u
                                for i in range(1, n + 1))
            good = good and all(u in neighbors(w) for w in nb)
            c.tally(good, str(u))
    checks.append(c)

    c = Check("cross-edge counts, n = 2..5")
    from math import factorial
    for n in range(2, 6):
        want = factorial(n - 2) * 2 ** (n - 2)
        for i in signed_values(n):
            for j in signed_values(n):
                if i == j:
                    continue
                got = len(cross_pairs(n, i, j))
                c.tally(got == (0 if i == -j else want), f"n={n} {i},{j}: {got}")
    checks.append(c)

    c = Check("girth 8, n = 2..4")
    for n in (2, 3, 4):
        g = girth(n)
        c.tally(g == 8, f"n={n}: {g}")
    checks.append(c)

    c = Check("nine-cycle of BP_3")
    c.tally(is_cycle(NINE_CYCLE) and len(NINE_CYCLE) == 9)
    checks.append(c)

    c = Check("distinct out-neighbours near each other")

    def out_rule(u, v, d):
        if u == v:
            return True
        if u[-1] == v[-1] and d <= 2:
            return out_neighbor(u) != out_neighbor(v)
        if u[-1] != v[-1] and d <= 3:
            return out_neighbor(u) != out_neighbor(v)
        return True

    from .graph_core import bfs_distances
    for u in all_vertices(3):
        dist = bfs_distances(u)
        for v in all_vertices(3):
            c.tally(out_rule(u, v, dist[v]), f"{u} {v}")
    for _ in range(samples):
        u, v = random_vertex(rng, 4), random_vertex(rng, 4)
        c.tally(out_rule(u, v, distance(u, v)), f"{u} {v}")
    checks.append(c)
    return checks


def suite_bp3_exhaustive(seed: int = 0, samples: int = 0, *,
                         table: Bp3Table | None = None, jobs: int = 1) -> list[Check]:
    """Every canonical BP_3 configuration: solved entries verify, unsolved ones re-checked.

    With ``table=None`` the table is rebuilt from scratch.
    """
    from .base_solver import _BP3, _ID3, canonical_keys

    t0 = time.perf_counter()
    tb = table if table is not None else build_bp3_table(jobs=jobs)
    R = Region.whole(3)
    solved = Check("BP_3 configurations with a verified 2-DPC")
    confirmed = Check("unsolved BP_3 configurations confirmed by a second search")
    for key in canonical_keys():
        v, x, y = key
        t = ((_ID3, _BP3[v]), (_BP3[x], _BP3[y]))
        if tb.entries.get(key) is None:
            solved.tally(False, f"no cover for {key}")
            confirmed.tally(dpc2_search(R, *t[0], *t[1], prune=False) is None, str(key))
            continue
        solved.tally(verify_dpc(R, tb.canonical(key), t) is None, str(key))
    if confirmed.total == 0:
        confirmed.tally(True)
    solved.notes.append(f"{time.perf_counter() - t0:.0f} s")
    return [solved, confirmed]


def _timed_dpc(n, F, t):
    t0 = time.perf_counter()
    try:
        d = dpc2_main(n, F, t)
    except ConstructionError as exc:
        return None, time.perf_counter() - t0, str(exc)
    return d, time.perf_counter() - t0, ""


def _sweep_main(name: str, n: int, instances, *, per_limit: float | None = None,
                median_limit: float | None = None) -> list[Check]:
    c = Check(name)
    times = []
    for F, t in instances:
        d, dt, err = _timed_dpc(n, F, t)
        times.append(dt)
        bad = err or (d is not None and verify_dpc(Region.whole(n, F), d, t))
        if per_limit is not None and dt >= per_limit:
            bad = bad or f"took {dt:.1f} s"
        c.tally(not bad, f"{t}: {bad}")
    out = [c]
    if median_limit is not None:
        med = statistics.median(times) if times else float("inf")
        m = Check(f"{name}: median time < {median_limit * 1000:.0f} ms")
        m.tally(med < median_limit, f"median {med * 1000:.1f} ms")
        m.notes.append(f"median {med * 1000:.1f} ms")
        out.append(m)
    return out


def suite_main_n4(seed: int = 0, samples: int = 2000) -> list[Check]:
    rng = random.Random(seed)
    get_table()
    inst = [(FaultSet(4), random_terminals(rng, 4)) for _ in range(samples)]
    return _sweep_main("fault-free BP_4 covers", 4, inst, median_limit=0.05)


def n5_instances(rng: random.Random, samples: int):
    kinds = ("vertex", "inner", "out")
    out = []
    for i in range(samples):
        F = random_fault(rng, 5, kinds[i % 3])
        out.append((F, random_terminals(rng, 5, F)))
    return out


def n6_instances(rng: random.Random, samples: int):
    kinds = ("vertex", "inner", "out")
    out = []
    for i in range(samples):
        mode = i % 3
        if mode == 0:
            # both faults in one subgraph
            k = rng.choice(signed_values(6))
            while True:
                F = merge(random_fault(rng, 6, rng.choice(kinds[:2]), k),
                          random_fault(rng, 6, rng.choice(kinds[:2]), k))
                if F.size() == 2:
                    break
        else:
            while True:
                F = merge(random_fault(rng, 6, rng.choice(kinds)),
                          random_fault(rng, 6, rng.choice(kinds)))
                if F.size() == 2:
                    break
        out.append((F, random_terminals(rng, 6, F)))
    return out


def suite_main_n5(seed: int = 0, samples: int = 1000) -> list[Check]:
    rng = random.Random(seed)
    get_table()
    return _sweep_main("BP_5 covers with one fault", 5, n5_instances(rng, samples))


def suite_main_n6_smoke(seed: int = 0, samples: int = 50) -> list[Check]:
    rng = random.Random(seed)
    get_table()
    return _sweep_main("BP_6 covers with two faults", 6, n6_instances(rng, samples),
                       per_limit=30.0)


def suite_branches(seed: int = 0, samples: int = 3) -> list[Check]:
    rng = random.Random(seed)
    get_table()
    checks = []
    for tag in BRANCH_TAGS:
        inst = [branch_instance(rng, tag) for _ in range(max(samples, 1))]
        checks.extend(_sweep_main(f"subcase {tag}", 5, inst))
    return checks


def suite_counterexamples(seed: int = 0, samples: int = 0) -> list[Check]:
    """Lower-bound witnesses: exhaustive at n = 3, local certificate for n = 4..6."""
    checks = []
    for kind in ("edges", "vertices"):
        F, u, x, w = counterexample(3, kind)
        R = Region.whole(3, F)
        free = [z for z in R.vertices() if z not in (u, x)]
        literal = Check(f"no 2-DPC splitting u, x for any v, y ({kind})")
        strict = Check(f"no 2-DPC splitting u, x for v, y other than w ({kind})")
        w_covers = Check(f"covers ending at w verify ({kind})")
        for v in free:
            for y in free:
                if y == v:
                    continue
                d = dpc2_search(R, u, v, x, y)
                t = ((u, v), (x, y))
                literal.tally(d is None, f"cover exists for v={v}, y={y}")
                if w in (v, y):
                    if d is not None:
                        w_covers.tally(verify_dpc(R, d, t) is None, str(t))
                else:
                    strict.tally(d is None, f"cover exists for v={v}, y={y}")
        if w_covers.total == 0:
            w_covers.tally(True)
        checks.extend([literal, strict, w_covers])
    c = Check("blocking certificate, n = 4..6")
    for n in (4, 5, 6):
        for kind in ("edges", "vertices"):
            F, u, x, w = counterexample(n, kind)
            c.tally(F.size() == n - 2 and check_blocking(n, F, u, x, w), f"n={n} {kind}")
    checks.append(c)
    return checks


def suite_oracle_n3(seed: int = 0, samples: int = 200) -> list[Check]:
    """Construction and exhaustive oracle agree on BP_3 with at most one fault."""
    rng = random.Random(seed)
    get_table()
    c = Check("construction agrees with the oracle on BP_3")
    for i in range(samples):
        F = FaultSet(3) if i % 2 == 0 else random_fault(rng, 3, rng.choice(["vertex", "inner", "out"]))
        t = random_terminals(rng, 3, F)
        R = Region.whole(3, F)
        exists = oracle_dpc_exists(R, t)
        try:
            d = dpc2_solve(3, F, t)
        except NoPathFound:
            d = None
        good = (d is not None) == exists
        if d is not None:
            good = good and verify_dpc(R, d, t) is None
        c.tally(good, f"{t} F={F.elements()}")
    return [c]


def suite_hamiltonian_n4(seed: int = 0, samples: int = 500) -> list[Check]:
    rng = random.Random(seed)
    kinds = ("vertex", "inner", "out")
    cyc = Check("Hamiltonian cycles of BP_4 with up to two faults")
    for i in range(samples):
        size = i % 3
        while True:
            F = merge(FaultSet(4), *(random_fault(rng, 4, rng.choice(kinds)) for _ in range(size)))
            if F.size() == size:
                break
        try:
            C = ham_cycle(4, F)
            bad = verify_ham_cycle(Region.whole(4, F), C)
        except ConstructionError as exc:
            bad = exc
        cyc.tally(not bad, f"F={F.elements()}: {bad}")
    pth = Check("Hamiltonian paths of BP_4 with up to one fault")
    for i in range(samples):
        F = FaultSet(4) if i % 2 == 0 else random_fault(rng, 4, rng.choice(kinds))
        (u, v), _ = random_terminals(rng, 4, F)
        try:
            P = ham_path(4, F, u, v)
            bad = verify_ham_path(Region.whole(4, F), P, u, v)
        except ConstructionError as exc:
            bad = exc
        pth.tally(not bad, f"{u}->{v} F={F.elements()}: {bad}")
    return [cyc, pth]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "structure": suite_structure,
    "bp3-exhaustive": suite_bp3_exhaustive,
    "main-n4": suite_main_n4,
    "main-n5": suite_main_n5,
    "main-n6-smoke": suite_main_n6_smoke,
    "branches": suite_branches,
    "counterexamples": suite_counterexamples,
    "oracle-n3": suite_oracle_n3,
    "hamiltonian-n4": suite_hamiltonian_n4,
}
