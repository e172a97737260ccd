"""Independent checks for paths, cycles and 2-DPCs, plus lower-bound witnesses.

Every check re-derives adjacency from the prefix-reversal definition and
walks the object vertex by vertex; nothing here trusts the constructions.
Checks return ``None`` when the object is valid and a :class:`Violation`
naming the first failed predicate otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .errors import DomainError
from .fault_model import FaultSet, Region
from .graph_core import (
    Vertex,
    format_vertex,
    identity,
    is_signed_perm,
    make_edge,
    neighbors,
    prefix_reversal,
    reversal_index,
)


@dataclass(frozen=True)
class Violation:
    category: str
    detail: str
    index: int | None = None

    def __str__(self) -> str:
        return f"FAIL {self.category} {self.detail}"


def _fmt(v) -> str:
    return format_vertex(v) if is_signed_perm(v) else repr(v)


def _walk(R: Region, seq: Sequence[Vertex], closed: bool) -> Violation | None:
    n = R.n
    F = R.faults
    seen = {}
    for i, v in enumerate(seq):
        if not (isinstance(v, tuple) and len(v) == n and is_signed_perm(v)):
            return Violation("vertex", f"index {i}: {v!r} is not a vertex of BP_{n}", i)
        if v[-1] not in R.labels:
            return Violation("region", f"index {i}: {_fmt(v)} lies outside the region", i)
        if not F.vertex_ok(v):
            return Violation("fault", f"index {i}: {_fmt(v)} is faulty", i)
        if v in seen:
            return Violation("distinct", f"index {i}: {_fmt(v)} repeats index {seen[v]}", i)
        seen[v] = i
    steps = len(seq) if closed else len(seq) - 1
    for i in range(steps):
        a, b = seq[i], seq[(i + 1) % len(seq)]
        if not reversal_index(a, b):
            return Violation("adjacency", f"index {i}: {_fmt(a)} and {_fmt(b)} are not adjacent", i)
        if not F.edge_ok(a, b):
            return Violation("fault", f"index {i}: edge {_fmt(a)} | {_fmt(b)} is faulty", i)
    return None


def verify_path(R: Region, p: Sequence[Vertex], u: Vertex | None = None,
                v: Vertex | None = None) -> Violation | None:
    """Check that ``p`` is a path of ``R`` of length at least one from ``u`` to ``v``."""
    if len(p) < 2:
        return Violation("length", f"path has {len(p)} vertices; at least one edge required")
    if u is not None and tuple(p[0]) != tuple(u):
        return Violation("endpoints", f"path starts at {_fmt(p[0])}, expected {_fmt(u)}", 0)
    if v is not None and tuple(p[-1]) != tuple(v):
        return Violation("endpoints", f"path ends at {_fmt(p[-1])}, expected {_fmt(v)}", len(p) - 1)
    return _walk(R, p, closed=False)


def verify_cycle(R: Region, c: Sequence[Vertex]) -> Violation | None:
    """``c`` lists the cycle's vertices once; the closing edge c[-1]c[0] is implied."""
    if len(c) < 3:
        return Violation("length", f"cycle has {len(c)} vertices")
    return _walk(R, c, closed=True)


def region_order(R: Region) -> int:
    """Number of fault-free vertices of ``R``."""
    per = factorial(R.n - 1) * 2 ** (R.n - 1) if R.n > 1 else 1
    return per * len(R.labels) - len(R.faults.vertices)


def _coverage(R: Region, covered: set) -> Violation | None:
    need = region_order(R)
    if len(covered) == need:
        return None
    missing = next((w for w in R.vertices() if w not in covered), None)
    detail = f"{len(covered)} of {need} vertices covered"
    if missing is not None:
        detail += f"; missing {format_vertex(missing)}"
    return Violation("coverage", detail)


def verify_ham_path(R: Region, p: Sequence[Vertex], u: Vertex | None = None,
                    v: Vertex | None = None) -> Violation | None:
    bad = verify_path(R, p, u, v)
    return bad or _coverage(R, set(p))


def verify_ham_cycle(R: Region, c: Sequence[Vertex]) -> Violation | None:
    bad = verify_cycle(R, c)
    return bad or _coverage(R, set(c))


def verify_dpc(R: Region, d, t) -> Violation | None:
    """Check a 2-DPC ``d = (P, Q)`` of ``R`` against terminals ``t = ((u, v), (x, y))``."""
    (u, v), (x, y) = t
    P, Q = d
    bad = verify_path(R, P, u, v)
    if bad:
        return Violation(bad.category, "P: " + bad.detail, bad.index)
    bad = verify_path(R, Q, x, y)
    if bad:
        return Violation(bad.category, "Q: " + bad.detail, bad.index)
    sp = set(P)
    common = sp.intersection(Q)
    if common:
        w = min(common)
        return Violation("disjoint", f"{format_vertex(w)} lies on both paths")
    return _coverage(R, sp | set(Q))


# ---------------------------------------------------------------------------
# oracles and lower-bound witnesses
# ---------------------------------------------------------------------------

def oracle_dpc_exists(R: Region, t, *, budget: int | None = None) -> bool:
    """Exhaustive existence test for a paired 2-DPC of ``R`` joining ``t``."""
    from .base_solver import DEFAULT_BUDGET, dpc2_search

    (u, v), (x, y) = t
    return dpc2_search(R, u, v, x, y, budget=budget or DEFAULT_BUDGET) is not None


def counterexample(n: int, kind: str = "edges"):
    """Fault set of size n-2 leaving the identity ``w`` with live neighbours u = w^1, x = w^2 only.

    Returns ``(F, u, x, w)``.  No 2-DPC {P[u, .], Q[x, .]} avoiding w as an
    endpoint can exist in BP_n - F, since any path through w uses both wu and wx.
    """
    if n < 3:
        raise DomainError("counterexample needs n >= 3")
    w = identity(n)
    u, x = prefix_reversal(w, 1), prefix_reversal(w, 2)
    others = [prefix_reversal(w, i) for i in range(3, n + 1)]
    if kind == "edges":
        F = FaultSet(n, frozenset(), frozenset(make_edge(w, z) for z in others))
    elif kind == "vertices":
        F = FaultSet(n, frozenset(others))
    else:
        raise DomainError(f"unknown counterexample kind {kind!r}")
    return F, u, x, w


def check_blocking(n: int, F: FaultSet, u: Vertex, x: Vertex, w: Vertex) -> bool:
    """Local certificate: w is fault-free and its only live neighbours are u and x."""
    if not F.vertex_ok(w) or u == x:
        return False
    live = {z for z in neighbors(w) if F.edge_ok(w, z)}
    return live == {tuple(u), tuple(x)}
