"""Constructive versions of the counting arguments used to glue subgraphs together.

Each picker scans its candidates in a fixed order and returns the first one
that meets the full contract; the existence arguments guarantee a hit, so
running out of candidates raises :class:`ConstructionError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ConstructionError, DomainError, PreconditionError
from .fault_model import FaultSet
from .graph_core import (
    Vertex,
    cross_pairs,
    neighbors,
    out_neighbor,
    signed_values,
)


@dataclass(frozen=True)
class EdgePick:
    """An edge ab of a path or cycle together with its out-neighbours.

    ``path_index``/``pos`` locate the edge: it joins ``cover[path_index][pos]``
    and the following vertex.  ``a`` is the endpoint whose out-neighbour
    satisfies the first label requirement, so it may be either of the two.
    """

    a: Vertex
    b: Vertex
    a_out: Vertex
    b_out: Vertex
    k3: int
    k4: int | None = None
    path_index: int = 0
    pos: int = 0


def _out_ok(F: FaultSet, a: Vertex) -> Vertex | None:
    w = out_neighbor(a)
    if F.vertex_ok(w) and F.edge_ok(a, w):
        return w
    return None


def iter_dpc_edges(cover: Sequence[Sequence[Vertex]], k1: int, k2: int | None,
                   avoid: Iterable[Vertex], F: FaultSet,
                   allowed: Iterable[int] | None = None) -> Iterator[EdgePick]:
    """Edges ab on the paths of ``cover`` whose out-edges leave BP_n^k1 cleanly.

    a^n must lie in BP_n^k2 (any allowed label when ``k2`` is None) and b^n in a
    further allowed label outside {k1, k2, -k1}.  None of a, b, a^n, b^n may be
    in ``avoid``.  Edges come in path order.
    """
    n = F.n
    if n < 4:
        raise PreconditionError("edge selection needs n >= 4")
    if k2 is not None and k2 in (k1, -k1):
        raise PreconditionError(f"label {k2} cannot receive out-edges from BP^{k1}")
    avoid = set(avoid)
    ok_labels = set(allowed) if allowed is not None else set(signed_values(n))
    ok_labels -= {k1, -k1}
    for pi, path in enumerate(cover):
        for pos in range(len(path) - 1):
            for a, b in ((path[pos], path[pos + 1]), (path[pos + 1], path[pos])):
                if a in avoid or b in avoid:
                    break
                la, lb = -a[0], -b[0]
                if k2 is not None:
                    if la != k2:
                        continue
                elif la not in ok_labels:
                    continue
                if lb not in ok_labels or lb == la:
                    continue
                ao = _out_ok(F, a)
                bo = _out_ok(F, b)
                if ao is None or bo is None or ao in avoid or bo in avoid:
                    continue
                yield EdgePick(a, b, ao, bo, lb, None, pi, pos)
                break


def pick_dpc_edge(cover: Sequence[Sequence[Vertex]], k1: int, k2: int | None,
                  avoid: Iterable[Vertex], F: FaultSet,
                  allowed: Iterable[int] | None = None) -> EdgePick:
    """First edge of :func:`iter_dpc_edges`."""
    for pick in iter_dpc_edges(cover, k1, k2, avoid, F, allowed):
        return pick
    raise ConstructionError(f"no admissible edge on the cover of BP^{k1} (k2={k2})")


def iter_cycle_edges(C: Sequence[Vertex], k1: int, k2: int | None, avoid: Iterable[Vertex],
                     F: FaultSet, allowed: Iterable[int] | None = None) -> Iterator[EdgePick]:
    """Edges ab of the cycle ``C`` with out-neighbours in two distinct labels outside {k1, k2, -k1}.

    ``pos`` is the index i with {C[i], C[i+1 mod len]} = {a, b}.
    """
    n = F.n
    if n < 4:
        raise PreconditionError("edge selection needs n >= 4")
    avoid = set(avoid)
    ok_labels = set(allowed) if allowed is not None else set(signed_values(n))
    ok_labels -= {k1, -k1}
    if k2 is not None:
        ok_labels.discard(k2)
    L = len(C)
    for pos in range(L):
        a, b = C[pos], C[(pos + 1) % L]
        if a in avoid or b in avoid:
            continue
        la, lb = -a[0], -b[0]
        if la == lb or la not in ok_labels or lb not in ok_labels:
            continue
        ao = _out_ok(F, a)
        bo = _out_ok(F, b)
        if ao is None or bo is None or ao in avoid or bo in avoid:
            continue
        yield EdgePick(a, b, ao, bo, la, lb, 0, pos)


def pick_cycle_edge(C: Sequence[Vertex], k1: int, k2: int | None, avoid: Iterable[Vertex],
                    F: FaultSet, allowed: Iterable[int] | None = None) -> EdgePick:
    for pick in iter_cycle_edges(C, k1, k2, avoid, F, allowed):
        return pick
    raise ConstructionError(f"no admissible edge on the cycle of BP^{k1}")


def iter_out_vertices(n: int, k1: int, k2: int, avoid: Iterable[Vertex], F: FaultSet,
                      e=None) -> Iterator[Vertex]:
    """Fault-free a in BP_n^k1 with a fault-free out-edge into BP_n^k2, by increasing id.

    Neither a nor a^n may be in ``avoid``.  ``e`` is an optional extra fault
    element ('v', w) or ('e', (p, q)): a must not be adjacent to w, resp. not
    incident with the edge.
    """
    if k2 in (k1, -k1):
        raise PreconditionError(f"no out-edges between BP^{k1} and BP^{k2}")
    avoid = set(avoid)
    blocked = set()
    if e is not None:
        kind, item = e
        if kind == "v":
            blocked = set(neighbors(item))
        else:
            blocked = set(item)
    for a, ao in cross_pairs(n, k1, k2):
        if a in avoid or ao in avoid or a in blocked:
            continue
        if F.vertex_ok(a) and F.vertex_ok(ao) and F.edge_ok(a, ao):
            yield a


def pick_out_vertex(n: int, k1: int, k2: int, avoid: Iterable[Vertex], F: FaultSet,
                    e=None) -> Vertex:
    """Smallest-id vertex of :func:`iter_out_vertices`."""
    for a in iter_out_vertices(n, k1, k2, avoid, F, e):
        return a
    raise ConstructionError(f"no admissible vertex of BP^{k1} with out-neighbour in BP^{k2}")


def _order_labels(labels: Sequence[int], first: int, last: int) -> list[int] | None:
    """Backtracking search for an ordering first..last with no consecutive k, -k."""
    rest = sorted(set(labels) - {first, last})
    if first == last:
        return [first] if not rest else None
    order = [first]
    used = set()

    def extend() -> bool:
        prev = order[-1]
        if len(used) == len(rest):
            return last != -prev
        for k in rest:
            if k in used or k == -prev:
                continue
            used.add(k)
            order.append(k)
            if extend():
                return True
            order.pop()
            used.discard(k)
        return False

    if not extend():
        return None
    order.append(last)
    return order


def order_labels(labels: Iterable[int], first: int, last: int) -> list[int]:
    """Arrange ``labels`` from ``first`` to ``last`` avoiding adjacent negation pairs."""
    labels = list(dict.fromkeys(labels))
    if len(labels) < 5:
        raise PreconditionError(f"need at least 5 labels, got {len(labels)}")
    if first not in labels or last not in labels or first == last:
        raise DomainError("first and last must be distinct members of the label set")
    order = _order_labels(labels, first, last)
    if order is None:
        raise ConstructionError("no admissible label order")  # impossible for m >= 5
    return order


def pick_chain_edges(order: Sequence[int], F: FaultSet, reserved: Iterable[Vertex],
                     banned: Iterable[tuple] = ()) -> list:
    """One fault-free out-edge (v_i, u_{i+1}) per consecutive label pair.

    All picked endpoints are pairwise distinct and avoid ``reserved``; pairs
    listed in ``banned`` are skipped.
    """
    n = F.n
    used = set(reserved)
    banned = set(banned)
    edges = []
    for k, k_next in zip(order, order[1:]):
        for a, b in cross_pairs(n, k, k_next):
            if a in used or b in used or (a, b) in banned:
                continue
            if F.vertex_ok(a) and F.vertex_ok(b) and F.edge_ok(a, b):
                edges.append((a, b))
                used.update((a, b))
                break
        else:
            raise ConstructionError(f"no free edge between BP^{k} and BP^{k_next}")
    return edges


def discordant_neighbors(C: Sequence[Vertex], u: Vertex, v: Vertex) -> tuple[Vertex, Vertex]:
    """Discordant neighbours (a, b) of u and v on C with a != b and a, b not in {u, v}."""
    L = len(C)
    if L <= 4:
        raise PreconditionError("cycle must be longer than 4")
    try:
        i, j = C.index(u), C.index(v)
    except ValueError:
        raise DomainError("u and v must lie on the cycle") from None
    if i == j:
        raise DomainError("u and v must differ")
    for a, b in ((C[(i - 1) % L], C[(j + 1) % L]), (C[(i + 1) % L], C[(j - 1) % L])):
        if a != b and a not in (u, v) and b not in (u, v):
            return a, b
    raise ConstructionError("no discordant pair")  # unreachable for L > 4


def split_cycle_discordant(C: Sequence[Vertex], u: Vertex, v: Vertex) -> tuple[list, list]:
    """Remove the edges ua and vb for discordant neighbours a, b.

    Returns (P[u, v], Q[a, b]) covering the cycle.
    """
    L = len(C)
    a, b = discordant_neighbors(C, u, v)
    i, j = C.index(u), C.index(v)
    if C[(i - 1) % L] == a:
        # ... a u ... v b ...
        P = [C[(i + s) % L] for s in range((j - i) % L + 1)]
        Q = [C[(j + 1 + s) % L] for s in range((i - 1 - j - 1) % L + 1)]
        return P, Q[::-1]
    # ... u a ... b v ...
    Q = [C[(i + 1 + s) % L] for s in range((j - 1 - i - 1) % L + 1)]
    P = [C[(j + s) % L] for s in range((i - j) % L + 1)]
    return P[::-1], Q


