"""Paired 2-disjoint path covers of faulty burnt pancake graphs.

A paired 2-DPC joining ((u, v), (x, y)) is a pair of vertex-disjoint paths
P[u, v] and Q[x, y] that together visit every fault-free vertex.  BP_3 is
answered from the precomputed table; larger graphs are split into their
subgraphs and handled by a case analysis on where the four terminals and
the faults sit.

Symmetric cases are reduced to one representative by swapping the two
pairs and/or the ends of a pair; the swap is undone on the result.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .base_solver import Dpc2, dpc2_search, get_table, path_cover_search
from .errors import ConstructionError, DomainError, NoPathFound, PreconditionError
from .fault_model import FaultSet, Region
from .graph_core import (
    Vertex,
    check_vertex,
    format_vertex,
    inverse,
    lift,
    num_vertices,
    out_neighbor,
    prefix_reversal,
    project,
    signed_values,
    translate,
    unrank,
)
from .ham_engine import (
    RETRY_LIMIT,
    _absorb_path,
    _chain,
    _counts,
    _cycle_path,
    _inner_elements,
    _sub_cycle,
    _sub_path,
    _union_path,
    _worst_label,
)
from .selection import (
    _order_labels,
    iter_dpc_edges,
    iter_out_vertices,
    pick_chain_edges,
    pick_out_vertex,
    split_cycle_discordant,
)

CASE_TAGS = ("1.1", "1.2", "2.1.1", "2.1.2.1", "2.1.2.2", "2.2", "2.3",
             "3.1", "3.2.1", "3.2.2", "3.2.3", "4.1", "4.2")


# ---------------------------------------------------------------------------
# symmetry bookkeeping: (swap pairs, reverse first pair, reverse second pair)
# ---------------------------------------------------------------------------

_OPS = [(s, fp, fq) for s in (0, 1) for fp in (0, 1) for fq in (0, 1)]


def _apply(op, t):
    s, fp, fq = op
    p, q = t
    if s:
        p, q = q, p
    if fp:
        p = p[::-1]
    if fq:
        q = q[::-1]
    return (p, q)


def _undo(op, P, Q):
    s, fp, fq = op
    if fq:
        Q = Q[::-1]
    if fp:
        P = P[::-1]
    if s:
        P, Q = Q, P
    return P, Q


def _normalize(t, pred: Callable) -> tuple:
    for op in _OPS:
        t2 = _apply(op, t)
        if pred(t2):
            return op, t2
    raise ConstructionError("no symmetric form of the terminals fits the case")


def _labels_of(t):
    (u, v), (x, y) = t
    return u[-1], v[-1], x[-1], y[-1]


def _attempt(cands: Iterable, build: Callable):
    """Return build(c) for the first candidate whose construction goes through."""
    for tries, c in enumerate(cands):
        try:
            return build(c)
        except NoPathFound:
            if tries >= RETRY_LIMIT:
                raise
    raise NoPathFound("every candidate failed")


# ---------------------------------------------------------------------------
# leaves and recursion
# ---------------------------------------------------------------------------

def _leaf_dpc(n: int, F: FaultSet, t) -> tuple[list, list]:
    (u, v), (x, y) = t
    if n == 3 and not F:
        d = get_table().query(u, v, x, y)
        return list(d.p), list(d.q)
    # solve with u moved to the identity; the automorphism commutes with adjacency
    g = inverse(u)
    Fg = FaultSet(n, frozenset(translate(g, w) for w in F.vertices),
                  frozenset((translate(g, a), translate(g, b)) for a, b in F.edges))
    d = dpc2_search(Region.whole(n, Fg), *(translate(g, w) for w in (u, v, x, y)))
    if d is None:
        raise NoPathFound(f"BP_{n} - F has no 2-DPC for these terminals")
    return [translate(u, w) for w in d.p], [translate(u, w) for w in d.q]


def _sub_dpc(F: FaultSet, k: int, pair1, pair2) -> tuple[list, list]:
    t = ((project(pair1[0]), project(pair1[1])), (project(pair2[0]), project(pair2[1])))
    P, Q = _dpc(F.n - 1, F.restrict(k), t)
    return [lift(z, k) for z in P], [lift(z, k) for z in Q]


def _dpc(n: int, F: FaultSet, t) -> tuple[list, list]:
    if n <= 3:
        return _leaf_dpc(n, F, t)
    labels = signed_values(n)
    _, fs = _worst_label(F, labels)
    if fs <= max(n - 5, 0):
        return _union_dpc(n, F, labels, t)
    return _concentrated(n, F, t)


# ---------------------------------------------------------------------------
# unions of subgraphs that each admit 2-DPCs
# ---------------------------------------------------------------------------

def _double_chain(n: int, F: FaultSet, labels: Sequence[int], t) -> tuple[list, list]:
    """Both paths run through every subgraph; neither pair shares a subgraph."""
    (u, v), (x, y) = t
    order_p = _order_labels(labels, u[-1], v[-1])
    order_q = _order_labels(labels, x[-1], y[-1])
    if order_p is None or order_q is None:
        raise PreconditionError("labels admit no chain order")

    def ends(order, edges, s, e):
        ins = {order[0]: s}
        outs = {order[-1]: e}
        for (a, b), k, k2 in zip(edges, order, order[1:]):
            outs[k], ins[k2] = a, b
        return ins, outs

    # a subgraph may receive a terminal set it cannot serve (possible in BP_3);
    # then one chain edge at that subgraph is banned and the edges re-picked
    banned = set()
    for attempt in range(RETRY_LIMIT):
        edges_p = pick_chain_edges(order_p, F, (u, v, x, y), banned)
        used = {u, v, x, y}
        used.update(z for e in edges_p for z in e)
        edges_q = pick_chain_edges(order_q, F, used, banned)
        p_in, p_out = ends(order_p, edges_p, u, v)
        q_in, q_out = ends(order_q, edges_q, x, y)
        seg_p, seg_q = {}, {}
        try:
            for k in labels:
                seg_p[k], seg_q[k] = _sub_dpc(F, k, (p_in[k], p_out[k]), (q_in[k], q_out[k]))
        except NoPathFound:
            touching = [e for e in edges_p + edges_q if e[0][-1] == k or e[1][-1] == k]
            banned.add(touching[attempt % len(touching)])
            continue
        P = [z for lab in order_p for z in seg_p[lab]]
        Q = [z for lab in order_q for z in seg_q[lab]]
        return P, Q
    raise NoPathFound("no choice of chain edges gives every subgraph a solvable terminal set")


def _free_edge(n: int, F: FaultSet, k: int) -> tuple[Vertex, Vertex]:
    """Smallest-id fault-free edge inside BP_n^k."""
    for i in range(num_vertices(n - 1)):
        a = lift(unrank(n - 1, i), k)
        b = prefix_reversal(a, 1)
        if F.vertex_ok(a) and F.vertex_ok(b) and F.edge_ok(a, b):
            return a, b
    raise ConstructionError(f"BP^{k} has no fault-free edge")


def _union_hamconn(n: int, F: FaultSet, labels: Sequence[int], u: Vertex, v: Vertex) -> list:
    """Hamiltonian path of the union, built from double chains."""
    if u[-1] != v[-1]:
        return _chain(n, F, labels, u, v)
    k = next(lab for lab in labels if lab != u[-1])
    a, b = _free_edge(n, F, k)
    P, Q = _double_chain(n, F, labels, ((u, a), (b, v)))
    return P + Q


def _union_dpc(n: int, F: FaultSet, labels: Sequence[int], t) -> tuple[list, list]:
    """2-DPC of a union of at least five subgraphs, each admitting 2-DPCs itself."""
    labels = list(labels)
    lu, lv, lx, ly = _labels_of(t)
    tally = {}
    for k in (lu, lv, lx, ly):
        tally[k] = tally.get(k, 0) + 1

    if 3 in tally.values():
        op, t2 = _normalize(t, lambda s: len({s[0][0][-1], s[0][1][-1], s[1][0][-1]}) == 1)
        (u, v), (x, y) = t2
        k1, k2 = u[-1], y[-1]
        rest = [k for k in labels if k != k1]

        def cands():
            for kt in labels:
                if kt not in (k1, -k1, k2):
                    yield from iter_out_vertices(n, k1, kt, (u, v, x), F)

        def build(a):
            P, Q1 = _sub_dpc(F, k1, (u, v), (x, a))
            return P, Q1 + _chain(n, F, rest, out_neighbor(a), y)

        return _undo(op, *_attempt(cands(), build))

    if len(tally) == 1:
        k1 = lu
        rest = [k for k in labels if k != k1]
        (u, v), (x, y) = t
        try:
            P, Q = _sub_dpc(F, k1, (u, v), (x, y))
        except NoPathFound:
            return _detour_all_four(n, F, labels, t)
        paths = [P, Q]

        def build(pick):
            path = paths[pick.path_index]
            pos = pick.pos
            H = _chain(n, F, rest, out_neighbor(path[pos]), out_neighbor(path[pos + 1]))
            out = list(paths)
            out[pick.path_index] = path[:pos + 1] + H + path[pos + 1:]
            return tuple(out)

        return _attempt(iter_dpc_edges(paths, k1, None, (), F, allowed=rest), build)

    (u, v), (x, y) = t
    if lu == lv:
        rest = [k for k in labels if k != lu]
        return _sub_path(F, lu, u, v), _union_hamconn(n, F, rest, x, y)
    if lx == ly:
        rest = [k for k in labels if k != lx]
        return _union_hamconn(n, F, rest, u, v), _sub_path(F, lx, x, y)
    return _double_chain(n, F, labels, t)


def _detour_all_four(n: int, F: FaultSet, labels: Sequence[int], t) -> tuple[list, list]:
    """All terminals in a small subgraph that has no 2-DPC for them.

    One path leaves the subgraph at a and comes back at b; inside, the three
    pieces u-a, b-v and x-y are found by search, outside a chain joins a^n
    to b^n.
    """
    (u, v), (x, y) = t
    k1 = u[-1]
    if n - 1 > 3:
        raise NoPathFound(f"no 2-DPC of BP^{k1} for the given terminals")
    rest = [k for k in labels if k != k1]
    Fk = F.restrict(k1)
    Rk = Region.whole(n - 1, Fk)
    terms = {u, v, x, y}
    exits = []
    for w in Rk.vertices():
        a = lift(w, k1)
        ao = out_neighbor(a)
        if a not in terms and ao[-1] in rest and F.vertex_ok(ao) and F.edge_ok(a, ao):
            exits.append(a)
    tries = 0
    for swap in (False, True):
        (s0, s1), (r0, r1) = ((x, y), (u, v)) if swap else ((u, v), (x, y))
        for a in exits:
            for b in exits:
                if b == a or out_neighbor(a)[-1] == out_neighbor(b)[-1]:
                    continue
                pairs = [(s0, a), (b, s1), (r0, r1)]
                res = path_cover_search(Rk, [(project(p), project(q)) for p, q in pairs])
                if res is None:
                    continue
                A, B, C = ([lift(z, k1) for z in seg] for seg in res)
                try:
                    H = _chain(n, F, rest, out_neighbor(a), out_neighbor(b))
                except NoPathFound:
                    tries += 1
                    if tries >= RETRY_LIMIT:
                        raise
                    continue
                moved = A + H + B
                return (C, moved) if swap else (moved, C)
    raise NoPathFound(f"no detour through BP^{k1} serves the terminals")


# ---------------------------------------------------------------------------
# two terminals in the faulty subgraph, two in another one
# ---------------------------------------------------------------------------

def _two_two(n: int, F: FaultSet, k1: int, t) -> tuple[list, list]:
    labels = signed_values(n)
    rest = [k for k in labels if k != k1]
    lu, lv, lx, ly = _labels_of(t)
    if lx == ly == k1:
        return _undo((1, 0, 0), *_two_two(n, F, k1, _apply((1, 0, 0), t)))
    if lu == lv == k1:
        (u, v), (x, y) = t
        H = _sub_path(F, k1, u, v)

        def within(pick):
            pos = pick.pos
            P2, Q = _union_dpc(n, F, rest, ((out_neighbor(H[pos]), out_neighbor(H[pos + 1])), (x, y)))
            return H[:pos + 1] + P2 + H[pos + 1:], Q

        return _attempt(iter_dpc_edges([H], k1, None, (u, v, x, y), F, allowed=rest), within)

    op, t2 = _normalize(t, lambda s: s[0][0][-1] == k1 and s[1][0][-1] == k1)
    (u, v), (x, y) = t2
    H = _sub_path(F, k1, u, x)

    def cross(pick):
        pos = pick.pos
        A, B = H[:pos + 1], H[pos + 1:]
        P3, Q3 = _union_dpc(n, F, rest, ((out_neighbor(A[-1]), v), (out_neighbor(B[0]), y)))
        return A + P3, B[::-1] + Q3

    return _undo(op, *_attempt(iter_dpc_edges([H], k1, None, (u, x, v, y), F, allowed=rest), cross))


# ---------------------------------------------------------------------------
# all faults inside one subgraph: case analysis
# ---------------------------------------------------------------------------

def _plan(n: int, F: FaultSet, t):
    """(tag, symmetry op, normalized terminals, faulty label)."""
    labels = signed_values(n)
    ks, fs = _worst_label(F, labels)
    if n < 5 or fs <= n - 5:
        return "union", (0, 0, 0), t, ks
    ident = (0, 0, 0)
    lu, lv, lx, ly = _labels_of(t)
    distinct = {lu, lv, lx, ly}

    def lab(s):
        return _labels_of(s)

    if len(distinct) == 1:
        return ("1.1" if lu == ks else "1.2"), ident, t, ks

    if len(distinct) == 2:
        tally = [lu, lv, lx, ly]
        if any(tally.count(k) == 3 for k in distinct):
            op, t2 = _normalize(t, lambda s: lab(s)[0] == lab(s)[1] == lab(s)[2])
            (u, v), (x, y) = t2
            if u[-1] != ks:
                return "2.1.1", op, t2, ks
            return ("2.1.2.1" if out_neighbor(x) == y else "2.1.2.2"), op, t2, ks
        if lu == lv:
            return "2.2", ident, t, ks

        def pred(s):
            a, b, c, d = lab(s)
            return a == c and b == d and (ks in (a, b) or ks != -a)

        op, t2 = _normalize(t, pred)
        return "2.3", op, t2, ks

    if len(distinct) == 3:
        if lu == lv or lx == ly:
            op, t2 = _normalize(t, lambda s: lab(s)[0] == lab(s)[1])
            return "3.1", op, t2, ks
        op, t2 = _normalize(t, lambda s: lab(s)[0] == lab(s)[2])
        a, b, c, d = lab(t2)
        if ks == a:
            return "3.2.2", op, t2, ks
        if ks in (b, d):
            op, t2 = _normalize(t, lambda s: lab(s)[0] == lab(s)[2] and lab(s)[1] == ks)
            return "3.2.3", op, t2, ks
        op, t2 = _normalize(t, lambda s: lab(s)[0] == lab(s)[2] and ks != -lab(s)[3])
        return "3.2.1", op, t2, ks

    if ks in distinct:
        op, t2 = _normalize(t, lambda s: lab(s)[0] == ks)
        return "4.1", op, t2, ks
    op, t2 = _normalize(t, lambda s: ks != -lab(s)[0])
    return "4.2", op, t2, ks


def _concentrated(n: int, F: FaultSet, t) -> tuple[list, list]:
    tag, op, t2, ks = _plan(n, F, t)
    if tag == "union":
        return _union_dpc(n, F, signed_values(n), t)
    if _counts(F, [ks])[ks] != len(F):
        raise ConstructionError("faults are spread over several subgraphs beyond the union bound")
    P, Q = _CASES[tag](n, F, ks, t2)
    return _undo(op, P, Q)


def _others(n: int, *drop: int) -> list:
    return [k for k in signed_values(n) if k not in drop]


def _case_1_1(n, F, ks, t):
    (u, v), (x, y) = t
    rest = _others(n, ks)
    kind, item = _inner_elements(F, ks)[0]
    paths = list(_sub_dpc(F.remove((kind, item)), ks, (u, v), (x, y)))
    where = None
    if kind == "v":
        for pi, path in enumerate(paths):
            if item in path:
                i = path.index(item)
                where = (pi, path[:i], path[i + 1:])
    else:
        for pi, path in enumerate(paths):
            for i in range(len(path) - 1):
                if {path[i], path[i + 1]} == set(item):
                    where = (pi, path[:i + 1], path[i + 1:])
    if where is None:
        pick = next(iter_dpc_edges(paths[::-1], ks, None, (), F, allowed=rest))
        pi = 1 - pick.path_index
        path = paths[pi]
        where = (pi, path[:pick.pos + 1], path[pick.pos + 1:])
    pi, X1, X2 = where
    paths[pi] = X1 + _chain(n, F, rest, out_neighbor(X1[-1]), out_neighbor(X2[0])) + X2
    return tuple(paths)


def _case_1_2(n, F, ks, t):
    (u, v), (x, y) = t
    k1 = u[-1]
    rest = _others(n, k1)
    paths = list(_sub_dpc(F, k1, (u, v), (x, y)))
    k2 = ks if ks != -k1 else None

    def build(pick):
        path = paths[pick.path_index]
        pos = pick.pos
        H = _absorb_path(n, F, rest, ks, out_neighbor(path[pos]), out_neighbor(path[pos + 1]))
        out = list(paths)
        out[pick.path_index] = path[:pos + 1] + H + path[pos + 1:]
        return tuple(out)

    return _attempt(iter_dpc_edges(paths, k1, k2, (), F, allowed=rest), build)


def _case_2_1_1(n, F, ks, t):
    (u, v), (x, y) = t
    k1, k2 = u[-1], y[-1]
    rest = _others(n, k1)

    def cands():
        for kt in signed_values(n):
            if kt not in (k1, -k1, k2):
                yield from iter_out_vertices(n, k1, kt, (u, v, x), F)

    def build(w):
        P, Q1 = _sub_dpc(F, k1, (u, v), (x, w))
        return P, Q1 + _chain(n, F, rest, out_neighbor(w), y)

    return _attempt(cands(), build)


def _case_2_1_2_1(n, F, ks, t):
    (u, v), (x, y) = t
    H1 = _sub_path(F, ks, u, v)
    i = H1.index(x)
    a, b = H1[i - 1], H1[i + 1]
    H2 = _chain(n, F.add_vertices(y), _others(n, ks), out_neighbor(a), out_neighbor(b))
    return H1[:i] + H2 + H1[i + 1:], [x, y]


def _case_2_1_2_2(n, F, ks, t):
    (u, v), (x, y) = t
    rest = _others(n, ks)
    C = _sub_cycle(F.add_vertices(x), ks)
    P1, Q1 = split_cycle_discordant(C, u, v)
    if out_neighbor(Q1[0]) == y:
        Q1 = Q1[::-1]
    a, b = Q1[0], Q1[-1]
    xo = out_neighbor(x)
    if out_neighbor(b) == y:
        P2 = _union_path(n, F.add_vertices(y), rest, xo, out_neighbor(a))
        return P1, [x] + P2 + Q1 + [y]
    P2, Q2 = _union_dpc(n, F, rest, ((xo, out_neighbor(a)), (out_neighbor(b), y)))
    return P1, [x] + P2 + Q1 + Q2


def _case_2_2(n, F, ks, t):
    (u, v), (x, y) = t
    k1 = u[-1]
    return _sub_path(F, k1, u, v), _union_path(n, F, _others(n, k1), x, y)


def _case_2_3(n, F, ks, t):
    (u, v), (x, y) = t
    k1, k2 = u[-1], v[-1]
    if ks in (k1, k2):
        return _two_two(n, F, ks, t)
    C = _sub_cycle(F, ks)
    L = len(C)
    rest = _others(n, k1, ks)

    def build(a):
        i = C.index(a)
        j = next(j for j in ((i + 1) % L, (i - 1) % L) if out_neighbor(C[j])[-1] != k2)
        b = C[j]
        H = _cycle_path(C, i, j)
        k3 = out_neighbor(b)[-1]
        k4 = next(k for k in signed_values(n) if k not in (k1, k2, k3, ks, -k1))
        ao = out_neighbor(a)
        c = pick_out_vertex(n, k1, k4, (u, x, ao), F)
        P1, Q1 = _sub_dpc(F, k1, (u, ao), (x, c))
        P2, Q2 = _union_dpc(n, F, rest, ((out_neighbor(b), v), (out_neighbor(c), y)))
        return P1 + H + P2, Q1 + Q2

    return _attempt(iter_out_vertices(n, ks, k1, (u, x), F), build)


def _case_3_1(n, F, ks, t):
    (u, v), (x, y) = t
    k1 = u[-1]
    P = _sub_path(F, k1, u, v)
    rest = _others(n, k1)
    if ks == k1:
        return P, _chain(n, F, rest, x, y)
    return P, _absorb_path(n, F, rest, ks, x, y)


def _case_3_2_1(n, F, ks, t):
    (u, v), (x, y) = t
    k3 = y[-1]
    a = pick_out_vertex(n, ks, k3, (y,), F)

    def cands():
        for kb in signed_values(n):
            if kb not in (ks, -ks, k3):
                yield from iter_out_vertices(n, ks, kb, (a, u, v, x), F)

    def build(b):
        H1 = _sub_path(F, ks, b, a)
        P, Q1 = _union_dpc(n, F, _others(n, ks, k3), ((u, v), (x, out_neighbor(b))))
        H2 = _sub_path(F, k3, out_neighbor(a), y)
        return P, Q1 + H1 + H2

    return _attempt(cands(), build)


def _case_3_2_2(n, F, ks, t):
    (u, v), (x, y) = t
    rest = _others(n, ks)
    H = _sub_path(F, ks, u, x)

    def build(pick):
        pos = pick.pos
        A, B = H[:pos + 1], H[pos + 1:]
        P2, Q2 = _union_dpc(n, F, rest, ((out_neighbor(A[-1]), v), (out_neighbor(B[0]), y)))
        return A + P2, B[::-1] + Q2

    return _attempt(iter_dpc_edges([H], ks, None, (u, x, v, y), F, allowed=rest), build)


def _case_3_2_3(n, F, ks, t):
    (u, v), (x, y) = t
    k1, k3 = u[-1], y[-1]
    k4 = next(k for k in signed_values(n) if k not in (k1, ks, -ks, k3))
    a = pick_out_vertex(n, ks, k4, (v,), F)
    H = _sub_path(F, ks, v, a)
    P1, Q = _union_dpc(n, F, _others(n, ks), ((out_neighbor(a), u), (x, y)))
    return (H + P1)[::-1], Q


def _case_4_1(n, F, ks, t):
    (u, v), (x, y) = t

    def cands():
        for kt in signed_values(n):
            if kt not in (ks, -ks):
                yield from iter_out_vertices(n, ks, kt, (u, v, x, y), F)

    def build(a):
        H = _sub_path(F, ks, u, a)
        P1, Q = _union_dpc(n, F, _others(n, ks), ((out_neighbor(a), v), (x, y)))
        return H + P1, Q

    return _attempt(cands(), build)


def _case_4_2(n, F, ks, t):
    (u, v), (x, y) = t
    k1 = u[-1]
    a = pick_out_vertex(n, ks, k1, (u,), F)

    def cands():
        for kb in signed_values(n):
            if kb not in (ks, -ks, k1):
                yield from iter_out_vertices(n, ks, kb, (a, v, x, y), F)

    def build(b):
        H1 = _sub_path(F, k1, u, out_neighbor(a))
        H2 = _sub_path(F, ks, a, b)
        P1, Q = _union_dpc(n, F, _others(n, k1, ks), ((out_neighbor(b), v), (x, y)))
        return H1 + H2 + P1, Q

    return _attempt(cands(), build)


_CASES = {
    "1.1": _case_1_1, "1.2": _case_1_2,
    "2.1.1": _case_2_1_1, "2.1.2.1": _case_2_1_2_1, "2.1.2.2": _case_2_1_2_2,
    "2.2": _case_2_2, "2.3": _case_2_3,
    "3.1": _case_3_1, "3.2.1": _case_3_2_1, "3.2.2": _case_3_2_2, "3.2.3": _case_3_2_3,
    "4.1": _case_4_1, "4.2": _case_4_2,
}


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def check_terminals(R: Region, t) -> tuple:
    """Validate terminal pairs ((u, v), (x, y)) against ``R``; returns it as tuples."""
    try:
        (u, v), (x, y) = t
    except (TypeError, ValueError):
        raise DomainError("terminals must be given as ((u, v), (x, y))") from None
    u, v, x, y = (check_vertex(w, R.n) for w in (u, v, x, y))
    if len({u, v, x, y}) != 4:
        raise PreconditionError("the four terminals must be pairwise distinct")
    for w in (u, v, x, y):
        if w not in R:
            raise PreconditionError(f"terminal {format_vertex(w)} is faulty or outside the region")
    return ((u, v), (x, y))


def _verified(R: Region, P, Q, t) -> Dpc2:
    from .verifier import verify_dpc

    bad = verify_dpc(R, (P, Q), t)
    if bad:
        raise ConstructionError(f"constructed 2-DPC failed verification: {bad}")
    return Dpc2(tuple(P), tuple(Q))


def _fault_set(n: int, F: FaultSet | None) -> FaultSet:
    if F is None:
        return FaultSet(n)
    if F.n != n:
        raise DomainError("fault set dimension mismatch")
    return F


def dpc2_union(R: Region, t, mode: int | None = None) -> Dpc2:
    """2-DPC of a union of subgraphs that each admit 2-DPCs.

    ``mode`` 2 insists that neither pair shares a subgraph (double chains
    only); mode 3 (the default when applicable) takes arbitrary terminals
    but needs six or more subgraphs.
    """
    n, F = R.n, R.faults
    if n < 4:
        raise PreconditionError("dpc2_union needs n >= 4")
    m = len(R.labels)
    if m < 5:
        raise PreconditionError(f"need at least 5 subgraphs, got {m}")
    if len(F) > n - 3:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 3 = {n - 3}")
    limit = max(n - 5, 0)
    counts = _counts(F, R.labels)
    for k in sorted(R.labels):
        if counts[k] > limit:
            raise PreconditionError(f"BP^{k} holds {counts[k]} faults; 2-DPCs need at most {limit}")
    t = check_terminals(R, t)
    lu, lv, lx, ly = _labels_of(t)
    colocated = lu == lv or lx == ly
    if mode is None:
        mode = 3 if m >= 6 else 2
    if mode == 2 and colocated:
        raise PreconditionError("mode 2 needs each pair spread over two subgraphs")
    if mode == 3 and m < 6:
        raise PreconditionError("mode 3 needs at least 6 subgraphs")
    if mode not in (2, 3):
        raise DomainError(f"unknown mode {mode}")
    labels = sorted(R.labels)
    if mode == 2:
        P, Q = _double_chain(n, F, labels, t)
    else:
        P, Q = _union_dpc(n, F, labels, t)
    return _verified(R, P, Q, t)


def dpc2_two_two(n: int, F: FaultSet | None, t, k1: int | None = None) -> Dpc2:
    """2-DPC when BP^k1 holds the faults and two terminals, another subgraph the other two."""
    F = _fault_set(n, F)
    if n < 4:
        raise PreconditionError("dpc2_two_two needs n >= 4")
    if len(F) > n - 3:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 3 = {n - 3}")
    R = Region.whole(n, F)
    t = check_terminals(R, t)
    labs = _labels_of(t)
    held = {k for k, c in _counts(F, signed_values(n)).items() if c}
    if F.out_edge_faults() or len(held) > 1:
        raise PreconditionError("faults must lie inside a single subgraph")
    if k1 is None:
        k1 = held.pop() if held else labs[0]
    elif held and held != {k1}:
        raise PreconditionError(f"faults must lie inside BP^{k1}")
    if labs.count(k1) != 2 or len(set(labs)) != 2:
        raise PreconditionError(f"BP^{k1} and one other subgraph must hold two terminals each")
    return _verified(R, *_two_two(n, F, k1, t), t)


def dpc2_main(n: int, F: FaultSet | None, t) -> Dpc2:
    """Paired 2-DPC of BP_n - F for n >= 4 and |F| <= n - 4."""
    F = _fault_set(n, F)
    if n < 4:
        raise PreconditionError("dpc2_main needs n >= 4")
    if len(F) > n - 4:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 4 = {n - 4}")
    R = Region.whole(n, F)
    t = check_terminals(R, t)
    return _verified(R, *_dpc(n, F, t), t)


def dpc2_solve(n: int, F: FaultSet | None, t) -> Dpc2:
    """Front end for every n: BP_3 and smaller by table or search, larger by construction.

    For n <= 3 with faults the answer comes from exhaustive search, so a
    :class:`NoPathFound` here means no 2-DPC exists.
    """
    F = _fault_set(n, F)
    if n >= 4:
        return dpc2_main(n, F, t)
    if n < 1:
        raise DomainError("n must be positive")
    R = Region.whole(n, F)
    t = check_terminals(R, t)
    return _verified(R, *_leaf_dpc(n, F, t), t)


def classify_case(n: int, F: FaultSet | None, t) -> str:
    """Which branch of the construction handles the instance ("union" or a case tag)."""
    F = _fault_set(n, F)
    return _plan(n, F, t)[0]
