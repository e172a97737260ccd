"""Hamiltonian paths and cycles of faulty burnt pancake graphs.

Small cases (n <= 3) are answered by exhaustive search.  For n >= 4 the
graph is split into its 2n subgraphs BP_n^k, each isomorphic to BP_{n-1}:
the subgraph holding the most faults is solved recursively and the others
are strung together through fault-free out-edges.

Internal helpers work on plain lists and take the fault set of the whole
graph; only the public functions validate inputs and verify outputs.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .base_solver import ham_cycle_search, ham_path_search
from .errors import ConstructionError, DomainError, NoPathFound, PreconditionError
from .fault_model import FaultSet, Region
from .graph_core import (
    Vertex,
    check_vertex,
    cross_pairs,
    format_vertex,
    identity,
    inverse,
    lift,
    out_neighbor,
    project,
    signed_values,
    translate,
)
from .selection import _order_labels, iter_cycle_edges, iter_dpc_edges

# how many alternative choices a construction may try after a search leaf fails
RETRY_LIMIT = 200


# ---------------------------------------------------------------------------
# search leaves
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _free_leaf_path(n: int, v: Vertex) -> tuple:
    res = ham_path_search(Region.whole(n), identity(n), v)
    if res is None:
        raise NoPathFound(f"BP_{n} has no Hamiltonian path to {format_vertex(v)}")
    return res


@lru_cache(maxsize=8192)
def _faulty_leaf_path(F: FaultSet, u: Vertex, v: Vertex) -> tuple | None:
    return ham_path_search(Region.whole(F.n, F), u, v)


@lru_cache(maxsize=4096)
def _leaf_cycle(F: FaultSet) -> tuple | None:
    return ham_cycle_search(Region.whole(F.n, F))


def _leaf_path(n: int, F: FaultSet, u: Vertex, v: Vertex) -> list:
    if not F:
        # BP_n is vertex-transitive: solve from the identity and translate back
        base = _free_leaf_path(n, translate(inverse(u), v))
        return [translate(u, z) for z in base]
    res = _faulty_leaf_path(F, u, v)
    if res is None:
        raise NoPathFound(f"BP_{n} - F has no Hamiltonian path {format_vertex(u)} -> {format_vertex(v)}")
    return list(res)


# ---------------------------------------------------------------------------
# recursion into subgraphs
# ---------------------------------------------------------------------------

def _sub_path(F: FaultSet, k: int, a: Vertex, b: Vertex) -> list:
    """Hamiltonian path of BP_n^k - F from a to b."""
    w = _path(F.n - 1, F.restrict(k), project(a), project(b))
    return [lift(z, k) for z in w]


def _sub_cycle(F: FaultSet, k: int) -> list:
    w = _cycle(F.n - 1, F.restrict(k))
    return [lift(z, k) for z in w]


def _counts(F: FaultSet, labels: Iterable[int]) -> dict:
    counts = {k: 0 for k in labels}
    for v in F.vertices:
        if v[-1] in counts:
            counts[v[-1]] += 1
    for a, b in F.edges:
        if a[-1] == b[-1] and a[-1] in counts:
            counts[a[-1]] += 1
    return counts


def _worst_label(F: FaultSet, labels: Sequence[int]) -> tuple[int, int]:
    counts = _counts(F, labels)
    k = max(labels, key=lambda lab: counts[lab])
    return k, counts[k]


def _out_clean(F: FaultSet, a: Vertex, labels) -> Vertex | None:
    w = out_neighbor(a)
    if w[-1] in labels and F.vertex_ok(w) and F.edge_ok(a, w):
        return w
    return None


def _inner_elements(F: FaultSet, k: int) -> list:
    return [(kind, item) for kind, item in F.elements()
            if (item[-1] == k if kind == "v" else item[0][-1] == k and item[1][-1] == k)]


def _cycle_path(C: Sequence[Vertex], i: int, j: int) -> list:
    """Walk the cycle from C[i] to its neighbour C[j] the long way round."""
    L = len(C)
    step = -1 if (i + 1) % L == j else 1
    return [C[(i + step * s) % L] for s in range(L)]


# ---------------------------------------------------------------------------
# chains of subgraphs
# ---------------------------------------------------------------------------

def _chain(n: int, F: FaultSet, labels: Sequence[int], u: Vertex, v: Vertex) -> list:
    """Hamiltonian path u -> v visiting the subgraphs in ``labels`` one after another."""
    if u[-1] == v[-1]:
        if len(set(labels)) != 1:
            raise DomainError("chain endpoints must lie in different subgraphs")
        return _sub_path(F, u[-1], u, v)
    order = _order_labels(labels, u[-1], v[-1])
    if order is None:
        raise PreconditionError(f"labels {sorted(labels)} admit no chain from {u[-1]} to {v[-1]}")
    tries = [RETRY_LIMIT]
    return _chain_from(n, F, order, 0, u, v, tries)


def _chain_from(n, F, order, i, entry, v, tries) -> list:
    k = order[i]
    if i == len(order) - 1:
        return _sub_path(F, k, entry, v)
    k_next = order[i + 1]
    last_next = i + 2 == len(order)
    for p, q in cross_pairs(n, k, k_next):
        if p == entry or (last_next and q == v):
            continue
        if not (F.vertex_ok(p) and F.vertex_ok(q) and F.edge_ok(p, q)):
            continue
        try:
            return _sub_path(F, k, entry, p) + _chain_from(n, F, order, i + 1, q, v, tries)
        except NoPathFound:
            tries[0] -= 1
            if tries[0] <= 0:
                raise
    raise NoPathFound(f"no way through BP^{k} towards BP^{k_next}")


def _union_path(n: int, F: FaultSet, labels: Sequence[int], u: Vertex, v: Vertex) -> list:
    """Hamiltonian path of the union of Hamiltonian-connected subgraphs, any endpoints."""
    if u[-1] != v[-1]:
        return _chain(n, F, labels, u, v)
    k1 = u[-1]
    rest = [k for k in labels if k != k1]
    H1 = _sub_path(F, k1, u, v)
    if not rest:
        return H1
    for tries, pick in enumerate(iter_dpc_edges([H1], k1, None, (), F, allowed=rest)):
        pos = pick.pos
        try:
            H = _chain(n, F, rest, out_neighbor(H1[pos]), out_neighbor(H1[pos + 1]))
        except NoPathFound:
            if tries >= RETRY_LIMIT:
                raise
            continue
        return H1[:pos + 1] + H + H1[pos + 1:]
    raise NoPathFound(f"no edge of BP^{k1} leads into the other subgraphs")


# ---------------------------------------------------------------------------
# one subgraph that is only Hamiltonian
# ---------------------------------------------------------------------------

def _absorb_path(n: int, F: FaultSet, labels: Sequence[int], kj: int, u: Vertex, v: Vertex) -> list:
    """Hamiltonian path u -> v when BP^kj carries the faults and the rest is clean."""
    from .dpc_engine import _union_dpc

    others = [k for k in labels if k != kj]
    if u[-1] != kj and v[-1] == kj:
        return _absorb_path(n, F, labels, kj, v, u)[::-1]

    if u[-1] == kj and v[-1] == kj:
        # split on a fault: solve without it, then route around it outside BP^kj
        kind, item = _inner_elements(F, kj)[0]
        H1 = _sub_path(F.remove((kind, item)), kj, u, v)
        if kind == "v":
            i = H1.index(item)
            X1, X2 = H1[:i], H1[i + 1:]
        else:
            pos = next((i for i in range(len(H1) - 1) if {H1[i], H1[i + 1]} == set(item)), None)
            if pos is None:
                pick = next(iter_dpc_edges([H1], kj, None, (), F, allowed=others), None)
                if pick is None:
                    raise ConstructionError(f"no usable edge on the path of BP^{kj}")
                pos = pick.pos
            X1, X2 = H1[:pos + 1], H1[pos + 1:]
        a, b = X1[-1], X2[0]
        ao, bo = _out_clean(F, a, others), _out_clean(F, b, others)
        if ao is None or bo is None:
            raise ConstructionError("fault split left no clean out-edges")
        return X1 + _chain(n, F, others, ao, bo) + X2

    C = _sub_cycle(F, kj)
    L = len(C)
    if u[-1] == kj:
        i = C.index(u)
        trapped = None
        for j in ((i + 1) % L, (i - 1) % L):
            ao = _out_clean(F, C[j], others)
            if ao is None:
                continue
            if ao == v:
                trapped = j
                continue
            try:
                return _cycle_path(C, i, j) + _union_path(n, F, others, ao, v)
            except NoPathFound:
                continue
        if trapped is None:
            raise ConstructionError(f"no clean out-edge next to {format_vertex(u)} on the cycle")
        # the only usable neighbour a of u exits onto v: split the cycle at another edge bc
        seq = _cycle_path(C, i, trapped)
        a = seq[-1]
        where = {z: s for s, z in enumerate(seq)}
        F_v = F.add_vertices(v)
        for tries, pick in enumerate(iter_cycle_edges(C, kj, None, (u, a, v), F, allowed=others)):
            s = min(where[pick.a], where[pick.b])
            b, c = seq[s], seq[s + 1]
            try:
                mid = _union_path(n, F_v, others, out_neighbor(b), out_neighbor(c))
            except NoPathFound:
                if tries >= RETRY_LIMIT:
                    raise
                continue
            return seq[:s + 1] + mid + seq[s + 1:] + [v]
        raise NoPathFound(f"no edge of the cycle of BP^{kj} can absorb the detour")

    # neither endpoint in BP^kj: open the cycle at ab and hang it between two paths
    for tries, pick in enumerate(iter_cycle_edges(C, kj, None, (u, v), F, allowed=others)):
        pos = pick.pos
        a, b = C[pos], C[(pos + 1) % L]
        try:
            P, Q = _union_dpc(n, F, others, ((u, out_neighbor(a)), (out_neighbor(b), v)))
        except NoPathFound:
            if tries >= RETRY_LIMIT:
                raise
            continue
        return list(P) + _cycle_path(C, pos, (pos + 1) % L) + list(Q)
    raise NoPathFound(f"no edge of the cycle of BP^{kj} fits between the terminals")


# ---------------------------------------------------------------------------
# whole graph
# ---------------------------------------------------------------------------

def _path(n: int, F: FaultSet, u: Vertex, v: Vertex) -> list:
    if n <= 3:
        return _leaf_path(n, F, u, v)
    labels = signed_values(n)
    ks, fs = _worst_label(F, labels)
    if fs <= n - 4:
        return _union_path(n, F, labels, u, v)
    return _absorb_path(n, F, labels, ks, u, v)


def _cycle(n: int, F: FaultSet) -> list:
    if n <= 3:
        res = _leaf_cycle(F)
        if res is None:
            raise NoPathFound(f"BP_{n} - F has no Hamiltonian cycle")
        return list(res)
    labels = signed_values(n)
    ks, fs = _worst_label(F, labels)
    others = [k for k in labels if k != ks]
    tries = 0

    if fs <= n - 4:
        # every subgraph is Hamiltonian-connected: close a chain with one out-edge
        for k in labels:
            for k2 in labels:
                if k2 in (k, -k):
                    continue
                for a, b in cross_pairs(n, k, k2):
                    if not (F.vertex_ok(a) and F.vertex_ok(b) and F.edge_ok(a, b)):
                        continue
                    try:
                        return _chain(n, F, labels, a, b)
                    except NoPathFound:
                        tries += 1
                        if tries >= RETRY_LIMIT:
                            raise
        raise NoPathFound("no out-edge closes a Hamiltonian cycle")

    if fs <= n - 3:
        C = _sub_cycle(F, ks)
        L = len(C)
        for pick in iter_cycle_edges(C, ks, None, (), F, allowed=others):
            pos = pick.pos
            a, b = C[pos], C[(pos + 1) % L]
            try:
                H = _chain(n, F, others, out_neighbor(a), out_neighbor(b))
            except NoPathFound:
                tries += 1
                if tries >= RETRY_LIMIT:
                    raise
                continue
            return _cycle_path(C, (pos + 1) % L, pos) + H
        raise NoPathFound(f"no edge of the cycle of BP^{ks} opens onto the rest")

    # too many faults for a cycle of BP^ks: solve without one and route around it
    kind, item = _inner_elements(F, ks)[0]
    C1 = _sub_cycle(F.remove((kind, item)), ks)
    L = len(C1)
    if kind == "v":
        i = C1.index(item)
        X = [C1[(i + 1 + s) % L] for s in range(L - 1)]
    else:
        pos = next((i for i in range(L) if {C1[i], C1[(i + 1) % L]} == set(item)), None)
        if pos is None:
            pick = next(iter_cycle_edges(C1, ks, None, (), F, allowed=others), None)
            if pick is None:
                raise ConstructionError(f"no usable edge on the cycle of BP^{ks}")
            pos = pick.pos
        X = _cycle_path(C1, (pos + 1) % L, pos)
    so, to = _out_clean(F, X[0], others), _out_clean(F, X[-1], others)
    if so is None or to is None:
        raise ConstructionError("fault split left no clean out-edges")
    return X + _chain(n, F, others, to, so)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def _verified_path(R: Region, p: Sequence[Vertex], u: Vertex, v: Vertex) -> tuple:
    from .verifier import verify_ham_path

    bad = verify_ham_path(R, p, u, v)
    if bad:
        raise ConstructionError(f"constructed path failed verification: {bad}")
    return tuple(p)


def _check_terminals(F: FaultSet, R: Region, *vs: Vertex) -> list:
    out = [check_vertex(x, F.n) for x in vs]
    if len(set(out)) != len(out):
        raise PreconditionError("terminals must be distinct")
    for x in out:
        if x not in R:
            raise PreconditionError(f"{format_vertex(x)} is faulty or outside the region")
    return out


def _fault_set(n: int, F: FaultSet | None) -> FaultSet:
    if F is None:
        return FaultSet(n)
    if F.n != n:
        raise DomainError("fault set dimension mismatch")
    return F


def ham_cycle(n: int, F: FaultSet | None = None) -> tuple:
    """Hamiltonian cycle of BP_n - F for |F| <= n - 2 (closing edge implied)."""
    from .verifier import verify_ham_cycle

    F = _fault_set(n, F)
    if n < 3:
        raise PreconditionError("ham_cycle needs n >= 3")
    if len(F) > n - 2:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 2 = {n - 2}")
    C = _cycle(n, F)
    bad = verify_ham_cycle(Region.whole(n, F), C)
    if bad:
        raise ConstructionError(f"constructed cycle failed verification: {bad}")
    return tuple(C)


def ham_path(n: int, F: FaultSet | None, u: Vertex, v: Vertex) -> tuple:
    """Hamiltonian path of BP_n - F from u to v for |F| <= n - 3."""
    F = _fault_set(n, F)
    if n < 3:
        raise PreconditionError("ham_path needs n >= 3")
    if len(F) > n - 3:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 3 = {n - 3}")
    R = Region.whole(n, F)
    u, v = _check_terminals(F, R, u, v)
    return _verified_path(R, _path(n, F, u, v), u, v)


def _check_subgraph_budget(R: Region) -> None:
    limit = max(R.n - 4, 0)
    counts = _counts(R.faults, R.labels)
    for k in sorted(R.labels):
        if counts[k] > limit:
            raise PreconditionError(
                f"BP^{k} holds {counts[k]} faults; Hamiltonian-connectivity needs at most {limit}")


def ham_path_multi(R: Region, u: Vertex, v: Vertex) -> tuple:
    """Hamiltonian path through the subgraphs of ``R`` one at a time, u and v in different ones."""
    n, F = R.n, R.faults
    if n < 3:
        raise PreconditionError("ham_path_multi needs n >= 3")
    u, v = _check_terminals(F, R, u, v)
    if u[-1] == v[-1]:
        raise PreconditionError("u and v must lie in different subgraphs")
    if len(F) > n - 2:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 2 = {n - 2}")
    if F and len(R.labels) < 5:
        raise PreconditionError("faulty regions need at least 5 subgraphs")
    _check_subgraph_budget(R)
    return _verified_path(R, _chain(n, F, sorted(R.labels), u, v), u, v)


def ham_path_union(R: Region, u: Vertex, v: Vertex) -> tuple:
    """Hamiltonian path of ``R`` between arbitrary distinct u and v (at least 6 subgraphs)."""
    n, F = R.n, R.faults
    if n < 4:
        raise PreconditionError("ham_path_union needs n >= 4")
    if len(R.labels) < 6:
        raise PreconditionError(f"need at least 6 subgraphs, got {len(R.labels)}")
    if len(F) > n - 3:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 3 = {n - 3}")
    _check_subgraph_budget(R)
    u, v = _check_terminals(F, R, u, v)
    return _verified_path(R, _union_path(n, F, sorted(R.labels), u, v), u, v)


def ham_path_one_cycle(R: Region, u: Vertex, v: Vertex) -> tuple:
    """Hamiltonian path of 2n - 1 subgraphs where the faulty one is merely Hamiltonian."""
    n, F = R.n, R.faults
    if n < 4:
        raise PreconditionError("ham_path_one_cycle needs n >= 4")
    if len(R.labels) != 2 * n - 1:
        raise PreconditionError(f"need exactly 2n - 1 = {2 * n - 1} subgraphs")
    if len(F) > n - 3:
        raise PreconditionError(f"|F| = {len(F)} exceeds the bound n - 3 = {n - 3}")
    if F.out_edge_faults():
        raise PreconditionError("faults must lie inside a single subgraph")
    held = {k for k, c in _counts(F, R.labels).items() if c}
    if len(held) > 1:
        raise PreconditionError("faults must lie inside a single subgraph")
    u, v = _check_terminals(F, R, u, v)
    labels = sorted(R.labels)
    if not held:
        return _verified_path(R, _union_path(n, F, labels, u, v), u, v)
    kj = held.pop()
    if u[-1] == kj and v[-1] == kj:
        raise PreconditionError("u and v may not both lie in the faulty subgraph")
    return _verified_path(R, _absorb_path(n, F, labels, kj, u, v), u, v)
