"""Implicit burnt pancake graph BP_n.

Vertices are signed permutations stored as plain tuples of nonzero ints,
e.g. ``(1, -2, 3)``.  Two vertices are adjacent when one is a prefix reversal
of the other.  Nothing about the graph is materialised: adjacency, subgraph
membership and the out-edge matching are all computed from the tuples.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

from .errors import DomainError

Vertex = tuple  # tuple[int, ...]
Edge = tuple  # (Vertex, Vertex), smaller VertexId first


# ---------------------------------------------------------------------------
# validation and text format
# ---------------------------------------------------------------------------

def is_signed_perm(u: Sequence[int]) -> bool:
    n = len(u)
    if n == 0:
        return False
    seen = set()
    for x in u:
        if not isinstance(x, int) or x == 0 or abs(x) > n:
            return False
        seen.add(abs(x))
    return len(seen) == n


def check_vertex(u: Sequence[int], n: int | None = None) -> Vertex:
    """Return ``u`` as a tuple, raising DomainError if it is not a vertex of BP_n."""
    t = tuple(u)
    if not is_signed_perm(t):
        raise DomainError(f"not a signed permutation: {u!r}")
    if n is not None and len(t) != n:
        raise DomainError(f"vertex {format_vertex(t)} does not belong to BP_{n}")
    return t


def identity(n: int) -> Vertex:
    return tuple(range(1, n + 1))


def format_vertex(u: Sequence[int]) -> str:
    return " ".join(str(x) for x in u)


def parse_vertex(text: str, n: int | None = None) -> Vertex:
    try:
        entries = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise DomainError(f"malformed vertex {text!r}") from exc
    return check_vertex(entries, n)


def format_edge(e: Edge) -> str:
    return f"{format_vertex(e[0])} | {format_vertex(e[1])}"


def parse_edge(text: str, n: int | None = None) -> Edge:
    parts = text.split("|")
    if len(parts) != 2:
        raise DomainError(f"malformed edge {text!r}")
    return make_edge(parse_vertex(parts[0], n), parse_vertex(parts[1], n))


# ---------------------------------------------------------------------------
# adjacency
# ---------------------------------------------------------------------------

def prefix_reversal(u: Vertex, i: int) -> Vertex:
    """Reverse and negate the first ``i`` entries of ``u``."""
    if not 1 <= i <= len(u):
        raise DomainError(f"prefix length {i} outside [1, {len(u)}]")
    return tuple(-x for x in reversed(u[:i])) + tuple(u[i:])


def neighbors(u: Vertex) -> list[Vertex]:
    return [prefix_reversal(u, i) for i in range(1, len(u) + 1)]


def reversal_index(a: Vertex, b: Vertex) -> int:
    """The i with a^i = b, or 0 if a and b are not adjacent."""
    n = len(a)
    if len(b) != n or a == b:
        return 0
    # a^i fixes positions > i and sets position i to -a_1
    i = n
    while i > 0 and a[i - 1] == b[i - 1]:
        i -= 1
    if i == 0 or b[:i] != tuple(-x for x in reversed(a[:i])):
        return 0
    return i


def is_adjacent(a: Vertex, b: Vertex) -> bool:
    return reversal_index(a, b) != 0


def subgraph_label(u: Vertex) -> int:
    return u[-1]


def out_neighbor(u: Vertex) -> Vertex:
    n = len(u)
    if n < 2:
        raise DomainError("BP_1 has no out-edges")
    return tuple(-x for x in reversed(u))


def make_edge(a: Vertex, b: Vertex) -> Edge:
    if not is_adjacent(a, b):
        raise DomainError(f"{format_vertex(a)} and {format_vertex(b)} are not adjacent")
    return (a, b) if rank(a) < rank(b) else (b, a)


def signed_values(n: int) -> list[int]:
    """The label set <n> in a fixed order: 1, -1, 2, -2, ..."""
    return [s * k for k in range(1, n + 1) for s in (1, -1)]


# ---------------------------------------------------------------------------
# ranking
# ---------------------------------------------------------------------------

def num_vertices(n: int) -> int:
    return factorial(n) * 2 ** n


def num_edges(n: int) -> int:
    return n * factorial(n) * 2 ** (n - 1)


def rank(u: Vertex) -> int:
    """Dense id: Lehmer rank of |u| times 2^n plus the sign bits."""
    n = len(u)
    lehmer = 0
    absu = [abs(x) for x in u]
    for p in range(n):
        smaller = sum(1 for q in range(p + 1, n) if absu[q] < absu[p])
        lehmer += smaller * factorial(n - 1 - p)
    signs = 0
    for p, x in enumerate(u):
        if x < 0:
            signs |= 1 << p
    return (lehmer << n) | signs


def unrank(n: int, vid: int) -> Vertex:
    if n < 1 or not 0 <= vid < num_vertices(n):
        raise DomainError(f"vertex id {vid} out of range for BP_{n}")
    lehmer, signs = vid >> n, vid & ((1 << n) - 1)
    pool = list(range(1, n + 1))
    out = []
    for p in range(n):
        f = factorial(n - 1 - p)
        idx, lehmer = divmod(lehmer, f)
        val = pool.pop(idx)
        out.append(-val if signs >> p & 1 else val)
    return tuple(out)


def all_vertices(n: int) -> Iterator[Vertex]:
    """Every vertex of BP_n in increasing VertexId order."""
    for perm in permutations(range(1, n + 1)):
        for bits in range(2 ** n):
            yield tuple(-x if bits >> p & 1 else x for p, x in enumerate(perm))


def all_edges(n: int) -> Iterator[Edge]:
    for u in all_vertices(n):
        ru = rank(u)
        for w in neighbors(u):
            if ru < rank(w):
                yield (u, w)


def subgraph_vertices(n: int, k: int) -> Iterator[Vertex]:
    """Vertices of BP_n^k in increasing VertexId order."""
    if n == 1:
        if abs(k) == 1:
            yield (k,)
        return
    yield from sorted((lift(w, k) for w in all_vertices(n - 1)), key=rank)


# ---------------------------------------------------------------------------
# subgraph structure
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cross_pairs(n: int, i: int, j: int) -> tuple:
    if i == -j:
        return ()
    rest = [v for v in range(1, n + 1) if v not in (abs(i), abs(j))]
    pairs = []
    for perm in permutations(rest):
        for signs in product((1, -1), repeat=len(rest)):
            a = (-j,) + tuple(s * v for s, v in zip(signs, perm)) + (i,)
            pairs.append((a, out_neighbor(a)))
    pairs.sort(key=lambda ab: rank(ab[0]))
    return tuple(pairs)


def cross_pairs(n: int, i: int, j: int) -> tuple:
    """Out-edges between BP_n^i and BP_n^j as (end in i, end in j), sorted by the first."""
    if i == j:
        raise DomainError("cross edges need two distinct labels")
    if n < 2:
        return ()
    return _cross_pairs(n, i, j)


def cross_edges(n: int, i: int, j: int) -> list[Edge]:
    """All edges of E_{i,j}(BP_n) in canonical form."""
    return sorted((make_edge(a, b) for a, b in cross_pairs(n, i, j)),
                  key=lambda e: rank(e[0]))


@lru_cache(maxsize=None)
def _relabel_maps(n: int, k: int) -> tuple[dict, dict]:
    # order-preserving signed bijection <n> \ {k, -k} -> <n-1>
    down, up = {}, {}
    new = 1
    for val in range(1, n + 1):
        if val == abs(k):
            continue
        down[val], down[-val] = new, -new
        up[new], up[-new] = val, -val
        new += 1
    return down, up


def project(u: Vertex) -> Vertex:
    """Map a vertex of BP_n^k (k = its last entry) onto BP_{n-1}."""
    down, _ = _relabel_maps(len(u), u[-1])
    return tuple(down[x] for x in u[:-1])


def lift(w: Vertex, k: int) -> Vertex:
    """Inverse of :func:`project` for the subgraph labelled ``k``."""
    _, up = _relabel_maps(len(w) + 1, k)
    return tuple(up[x] for x in w) + (k,)


# ---------------------------------------------------------------------------
# group structure
# ---------------------------------------------------------------------------

def translate(g: Vertex, u: Vertex) -> Vertex:
    """Left translation g∘u; commutes with every prefix reversal."""
    if len(g) != len(u):
        raise DomainError("translate needs vertices of the same dimension")
    return tuple(g[x - 1] if x > 0 else -g[-x - 1] for x in u)


def inverse(w: Vertex) -> Vertex:
    g = [0] * len(w)
    for p, x in enumerate(w, start=1):
        if x > 0:
            g[x - 1] = p
        else:
            g[-x - 1] = -p
    return tuple(g)


# ---------------------------------------------------------------------------
# metric properties (small n only)
# ---------------------------------------------------------------------------

def distance(u: Vertex, v: Vertex) -> int:
    if len(u) != len(v):
        raise DomainError("vertices of different dimensions")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        for b in neighbors(a):
            if b not in dist:
                if b == v:
                    return dist[a] + 1
                dist[b] = dist[a] + 1
                queue.append(b)
    raise DomainError("unreachable")  # BP_n is connected


def bfs_distances(u: Vertex, limit: int | None = None) -> dict:
    dist = {u: 0}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        if limit is not None and dist[a] >= limit:
            continue
        for b in neighbors(a):
            if b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def girth(n: int) -> float:
    """Shortest cycle length of BP_n by BFS from every vertex (inf if acyclic)."""
    best = float("inf")
    for root in all_vertices(n):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            if 2 * dist[a] + 1 >= best:
                break
            for b in neighbors(a):
                if b not in dist:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    queue.append(b)
                elif parent[a] != b:
                    best = min(best, dist[a] + dist[b] + 1)
    return best


def is_cycle(seq: Sequence[Vertex]) -> bool:
    """True if ``seq`` lists distinct vertices forming a closed walk (last→first closes it)."""
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(is_adjacent(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))
