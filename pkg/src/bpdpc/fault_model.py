"""Faulty vertices/edges and the regions of BP_n they leave behind."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DomainError
from .graph_core import (
    Edge,
    Vertex,
    check_vertex,
    format_edge,
    format_vertex,
    is_adjacent,
    make_edge,
    neighbors,
    parse_edge,
    parse_vertex,
    project,
    rank,
    signed_values,
    subgraph_label,
    subgraph_vertices,
)


@dataclass(frozen=True)
class FaultSet:
    n: int
    vertices: frozenset = frozenset()
    edges: frozenset = frozenset()
    _edge_keys: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        vs = frozenset(check_vertex(v, self.n) for v in self.vertices)
        es = frozenset(make_edge(check_vertex(a, self.n), check_vertex(b, self.n))
                       for a, b in self.edges)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        keys = set(es)
        keys.update((b, a) for a, b in es)
        object.__setattr__(self, "_edge_keys", frozenset(keys))

    @classmethod
    def empty(cls, n: int) -> "FaultSet":
        return cls(n)

    @classmethod
    def build(cls, n: int, vertices: Iterable = (), edges: Iterable = ()) -> "FaultSet":
        return cls(n, frozenset(tuple(v) for v in vertices),
                   frozenset((tuple(a), tuple(b)) for a, b in edges))

    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    __len__ = size

    def __bool__(self) -> bool:
        return self.size() > 0

    # -- queries ---------------------------------------------------------

    def vertex_ok(self, u: Vertex) -> bool:
        return u not in self.vertices

    def edge_ok(self, a: Vertex, b: Vertex) -> bool:
        """Fault-free test for a pair already known to be adjacent."""
        return ((a, b) not in self._edge_keys and a not in self.vertices
                and b not in self.vertices)

    def elements(self) -> list:
        """Faults as ('v', vertex) / ('e', edge) in a fixed order."""
        out = [("v", v) for v in sorted(self.vertices, key=rank)]
        out += [("e", e) for e in sorted(self.edges, key=lambda e: (rank(e[0]), rank(e[1])))]
        return out

    # -- derived sets ------------------------------------------------------

    def add_vertices(self, *vs: Vertex) -> "FaultSet":
        return FaultSet(self.n, self.vertices | frozenset(vs), self.edges)

    def remove(self, element) -> "FaultSet":
        kind, item = element
        if kind == "v":
            return FaultSet(self.n, self.vertices - {item}, self.edges)
        return FaultSet(self.n, self.vertices, self.edges - {item})

    def internal_count(self, k: int) -> int:
        return faults_in_subgraph(self, k)

    def out_edge_faults(self) -> list:
        return [e for e in self.edges if subgraph_label(e[0]) != subgraph_label(e[1])]

    def restrict(self, k: int) -> "FaultSet":
        """Faults inside BP_n^k expressed in BP_{n-1} coordinates."""
        vs = frozenset(project(v) for v in self.vertices if v[-1] == k)
        es = frozenset((project(a), project(b)) for a, b in self.edges
                       if a[-1] == k and b[-1] == k)
        return FaultSet(self.n - 1, vs, es)

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for kind, item in self.elements():
            lines.append(f"v {format_vertex(item)}" if kind == "v" else f"e {format_edge(item)}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, n: int, text: str) -> "FaultSet":
        vs, es = set(), set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            kind, _, rest = line.partition(" ")
            if kind == "v":
                vs.add(parse_vertex(rest, n))
            elif kind == "e":
                es.add(parse_edge(rest, n))
            else:
                raise DomainError(f"line {lineno}: expected 'v' or 'e', got {kind!r}")
        return cls(n, frozenset(vs), frozenset(es))


def is_fault_free_vertex(F: FaultSet, u: Vertex) -> bool:
    return F.vertex_ok(check_vertex(u, F.n))


def is_fault_free_edge(F: FaultSet, a: Vertex, b: Vertex) -> bool:
    a, b = check_vertex(a, F.n), check_vertex(b, F.n)
    if not is_adjacent(a, b):
        raise DomainError(f"{format_vertex(a)} and {format_vertex(b)} are not adjacent")
    return F.edge_ok(a, b)


def faults_in_subgraph(F: FaultSet, k: int) -> int:
    count = sum(1 for v in F.vertices if v[-1] == k)
    count += sum(1 for a, b in F.edges if a[-1] == k and b[-1] == k)
    return count


@dataclass(frozen=True)
class Region:
    """A union of subgraphs BP_n^k (k in ``labels``) minus a fault set.

    Faults that do not lie inside the label set are dropped on construction.
    """

    n: int
    labels: frozenset
    faults: FaultSet

    def __post_init__(self):
        labels = frozenset(self.labels)
        if not labels or any(k == 0 or abs(k) > self.n for k in labels):
            raise DomainError(f"invalid label set {sorted(labels)} for BP_{self.n}")
        object.__setattr__(self, "labels", labels)
        F = self.faults
        if F.n != self.n:
            raise DomainError("fault set dimension mismatch")
        vs = frozenset(v for v in F.vertices if v[-1] in labels)
        es = frozenset(e for e in F.edges if e[0][-1] in labels and e[1][-1] in labels)
        if vs != F.vertices or es != F.edges:
            object.__setattr__(self, "faults", FaultSet(self.n, vs, es))

    @classmethod
    def whole(cls, n: int, faults: FaultSet | None = None) -> "Region":
        return cls(n, frozenset(signed_values(n)), faults or FaultSet(n))

    def __contains__(self, u) -> bool:
        return len(u) == self.n and u[-1] in self.labels and self.faults.vertex_ok(u)

    def vertices(self) -> Iterator[Vertex]:
        """Fault-free vertices of the region in increasing VertexId order."""
        verts = []
        for k in self.labels:
            verts.extend(v for v in subgraph_vertices(self.n, k) if self.faults.vertex_ok(v))
        verts.sort(key=rank)
        return iter(verts)

    def live_neighbors(self, u: Vertex) -> list[Vertex]:
        if u not in self:
            raise DomainError(f"{format_vertex(u)} is not a vertex of the region")
        return [w for w in neighbors(u) if w in self and self.faults.edge_ok(u, w)]


def live_neighbors(R: Region, u: Vertex) -> list[Vertex]:
    return R.live_neighbors(tuple(u))
