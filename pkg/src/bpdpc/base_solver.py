"""Complete backtracking search for Hamiltonian paths, cycles and paired 2-DPCs.

The searches work on small regions (a few hundred vertices at most) and are
exhaustive: ``None`` means the object does not exist.  Pruning is limited to
rules that never discard a valid completion:

* degree rule -- an unvisited inner vertex needs two usable neighbours, an
  unvisited terminal needs one;
* forcing -- a neighbour of the head that has exactly two usable neighbours
  (one of them the head) must be visited next;
* connectivity -- every component of the unvisited part must be reachable by
  one of the paths still to be drawn.

The module also owns the BP_3 table: one verified 2-DPC for every terminal
configuration with the first terminal translated to the identity.
"""

from __future__ import annotations

import hashlib
import logging
import os
import random
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Callable, NamedTuple, Sequence

from .errors import (
    CorruptTableError,
    DomainError,
    NoPathFound,
    SearchBudgetExceeded,
    TableVersionError,
)
from .fault_model import FaultSet, Region
from .graph_core import (
    Vertex,
    all_vertices,
    format_vertex,
    identity,
    inverse,
    parse_vertex,
    rank,
    translate,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10 ** 8
TABLE_HEADER = "BP3DPC v1"
TABLE_ENV = "BPDPC_TABLE"
TABLE_SIZE = 48645


class Dpc2(NamedTuple):
    """Two vertex-disjoint paths; ``p`` joins the first pair, ``q`` the second."""

    p: tuple
    q: tuple


# ---------------------------------------------------------------------------
# local indexed graph
# ---------------------------------------------------------------------------

class _LocalGraph:
    def __init__(self, region: Region):
        self.verts = list(region.vertices())
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.nbrs = []
        self.adj = []
        for v in self.verts:
            ids = sorted(self.index[w] for w in region.live_neighbors(v))
            self.nbrs.append(ids)
            mask = 0
            for i in ids:
                mask |= 1 << i
            self.adj.append(mask)

    def idx(self, v: Vertex) -> int:
        try:
            return self.index[tuple(v)]
        except KeyError:
            raise DomainError(f"{format_vertex(v)} is not a fault-free vertex of the region") from None


def _search_segments(g: _LocalGraph, segments: Sequence[tuple[int, int]],
                     budget: int, prune: bool) -> list[list[int]] | None:
    """Cover all vertices of ``g`` by paths joining the given index pairs, in order."""
    N = len(g.verts)
    adj, nbrs = g.adj, g.nbrs
    ends = [i for seg in segments for i in seg]
    if len(set(ends)) != len(ends):
        raise DomainError("terminals must be pairwise distinct")
    last = len(segments) - 1
    full = (1 << N) - 1
    # future_term[si] = bitmask of terminals of segments after si
    future_term = []
    for si in range(len(segments)):
        mask = 0
        for s, t in segments[si + 1:]:
            mask |= (1 << s) | (1 << t)
        future_term.append(mask)

    counter = [0]
    paths: list[list[int]] = [[] for _ in segments]

    def flood(start: int, mask: int) -> int:
        comp = 1 << start
        frontier = comp
        while frontier:
            new = 0
            f = frontier
            while f:
                low = f & -f
                new |= adj[low.bit_length() - 1]
                f ^= low
            new &= mask & ~comp
            comp |= new
            frontier = new
        return comp

    def feasible(h: int, U: int, si: int, removed: Sequence[int]) -> bool:
        avail = U | (1 << h)
        fut = future_term[si]
        t = segments[si][1]
        for z in removed:
            m = adj[z] & U
            while m:
                low = m & -m
                m ^= low
                w = low.bit_length() - 1
                if fut >> w & 1:
                    if not adj[w] & U:
                        return False
                elif w == t:
                    if not adj[w] & avail:
                        return False
                elif (adj[w] & avail).bit_count() < 2:
                    return False
        if U >> t & 1 and not adj[t] & avail:
            return False
        # removing a vertex can only split the rest if it leaves two live neighbours behind
        if removed and all((adj[z] & avail & ~(1 << h)) == 0 for z in removed):
            return True
        comp = flood(h, avail)
        if not comp >> t & 1:
            return False
        rest = avail & ~comp
        if rest:
            if si == last:
                return False
            # the remaining vertices must form exactly one component holding the next pair
            if len(segments) - si != 2:
                return True
            s2, t2 = segments[si + 1]
            if not (rest >> s2 & 1 and rest >> t2 & 1):
                return False
            if flood(s2, rest) != rest:
                return False
        return True

    def step(h: int, U: int, si: int) -> bool:
        counter[0] += 1
        if counter[0] > budget:
            raise SearchBudgetExceeded(f"search exceeded {budget} nodes")
        t = segments[si][1]
        fut = future_term[si]
        hbit = 1 << h
        avail = U | hbit
        cands = []
        forced = []
        for w in nbrs[h]:
            if not U >> w & 1 or fut >> w & 1:
                continue
            if w == t:
                if si == last and U != 1 << t:
                    continue
                if prune and (adj[t] & avail) == hbit:
                    forced.append(w)
            elif prune and (adj[w] & avail).bit_count() == 2:
                forced.append(w)
            cands.append(w)
        if prune and forced:
            if len(forced) > 1:
                return False
            cands = forced
        else:
            cands.sort(key=lambda w: ((adj[w] & U).bit_count(), w))
        for w in cands:
            U2 = U & ~(1 << w)
            if w == t:
                paths[si].append(w)
                if si == last:
                    if U2 == 0:
                        return True
                else:
                    s2 = segments[si + 1][0]
                    U3 = U2 & ~(1 << s2)
                    if not prune or feasible(s2, U3, si + 1, (h, t)):
                        paths[si + 1].append(s2)
                        if step(s2, U3, si + 1):
                            return True
                        paths[si + 1].pop()
                paths[si].pop()
                continue
            if prune and not feasible(w, U2, si, (h,)):
                continue
            paths[si].append(w)
            if step(w, U2, si):
                return True
            paths[si].pop()
        return False

    s0 = segments[0][0]
    U0 = full & ~(1 << s0)
    if prune:
        # initial degree screen over every vertex
        avail = full
        fut = future_term[0]
        for w in range(N):
            if w == s0:
                continue
            need = 1 if (w in ends) else 2
            pool = U0 if fut >> w & 1 else avail
            if (adj[w] & pool).bit_count() < need:
                return None
        if not feasible(s0, U0, 0, ()):
            return None
    paths[0].append(s0)
    if step(s0, U0, 0):
        return paths
    return None


def ham_path_search(R: Region, u: Vertex, v: Vertex, *, budget: int = DEFAULT_BUDGET,
                    prune: bool = True) -> tuple | None:
    """Hamiltonian path of ``R`` from ``u`` to ``v``, or None if none exists."""
    u, v = tuple(u), tuple(v)
    if u == v:
        raise DomainError("path endpoints must differ")
    g = _LocalGraph(R)
    res = _search_segments(g, [(g.idx(u), g.idx(v))], budget, prune)
    if res is None:
        return None
    return tuple(g.verts[i] for i in res[0])


def ham_cycle_search(R: Region, *, budget: int = DEFAULT_BUDGET, prune: bool = True) -> tuple | None:
    """Hamiltonian cycle of ``R`` as a vertex sequence (closing edge implied)."""
    g = _LocalGraph(R)
    if len(g.verts) < 3:
        return None
    s = 0
    for t in g.nbrs[s]:
        res = _search_segments(g, [(s, t)], budget, prune)
        if res is not None:
            return tuple(g.verts[i] for i in res[0])
    return None


def dpc2_search(R: Region, u: Vertex, v: Vertex, x: Vertex, y: Vertex, *,
                budget: int = DEFAULT_BUDGET, prune: bool = True) -> Dpc2 | None:
    """Paired 2-DPC {P[u,v], Q[x,y]} of ``R``, or None if none exists."""
    g = _LocalGraph(R)
    segs = [(g.idx(u), g.idx(v)), (g.idx(x), g.idx(y))]
    res = _search_segments(g, segs, budget, prune)
    if res is None:
        return None
    return Dpc2(tuple(g.verts[i] for i in res[0]), tuple(g.verts[i] for i in res[1]))


def path_cover_search(R: Region, pairs: Sequence[tuple[Vertex, Vertex]], *,
                      budget: int = DEFAULT_BUDGET, prune: bool = True) -> tuple | None:
    """Vertex-disjoint paths joining each given pair and covering ``R``, or None."""
    g = _LocalGraph(R)
    segs = [(g.idx(a), g.idx(b)) for a, b in pairs]
    res = _search_segments(g, segs, budget, prune)
    if res is None:
        return None
    return tuple(tuple(g.verts[i] for i in path) for path in res)


# ---------------------------------------------------------------------------
# BP_3 table
# ---------------------------------------------------------------------------

_BP3 = tuple(all_vertices(3))  # index == VertexId
_ID3 = identity(3)


def canonical_keys() -> list[tuple[int, int, int]]:
    """All (v, x, y) VertexId triples with u = identity and x < y."""
    keys = []
    rest = range(1, 48)
    for v in rest:
        for x in rest:
            if x == v:
                continue
            for y in range(x + 1, 48):
                if y != v:
                    keys.append((v, x, y))
    return keys


@dataclass
class Bp3Table:
    """Verified 2-DPCs of BP_3 keyed by canonical terminal configuration.

    ``entries[(v, x, y)] = (P, Q)`` where P joins the identity to vertex ``v``
    and Q joins ``x`` to ``y`` (VertexIds, ``x < y``); paths are stored as
    bytes of VertexIds.  A value of ``None`` marks a configuration for which
    exhaustive search proved that no 2-DPC exists.
    """

    entries: dict

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bp3Table) and self.entries == other.entries

    def solved(self) -> int:
        return sum(1 for e in self.entries.values() if e is not None)

    def unsolvable(self) -> list[tuple[int, int, int]]:
        return sorted(k for k, e in self.entries.items() if e is None)

    def canonical(self, key: tuple[int, int, int]) -> Dpc2:
        entry = self.entries[key]
        if entry is None:
            raise NoPathFound(f"BP_3 has no 2-DPC for configuration {key}")
        p, q = entry
        return Dpc2(tuple(_BP3[i] for i in p), tuple(_BP3[i] for i in q))

    def query(self, u: Vertex, v: Vertex, x: Vertex, y: Vertex) -> Dpc2:
        """2-DPC {P[u,v], Q[x,y]} of fault-free BP_3."""
        g = inverse(u)
        tv, tx, ty = rank(translate(g, v)), rank(translate(g, x)), rank(translate(g, y))
        flip = tx > ty
        key = (tv, ty, tx) if flip else (tv, tx, ty)
        try:
            entry = self.entries[key]
        except KeyError:
            raise KeyError(f"BP_3 table has no entry for {key}") from None
        if entry is None:
            raise NoPathFound(f"BP_3 has no 2-DPC joining {format_vertex(u)} - {format_vertex(v)}"
                              f" and {format_vertex(x)} - {format_vertex(y)}")
        p, q = entry
        P = tuple(translate(u, _BP3[i]) for i in p)
        Q = tuple(translate(u, _BP3[i]) for i in q)
        if flip:
            Q = Q[::-1]
        return Dpc2(P, Q)


def _solve_key(key: tuple[int, int, int]) -> tuple[bytes, bytes] | None:
    v, x, y = key
    d = dpc2_search(Region.whole(3), _ID3, _BP3[v], _BP3[x], _BP3[y])
    if d is None:
        return None
    return bytes(rank(w) for w in d.p), bytes(rank(w) for w in d.q)


def build_bp3_table(jobs: int = 1, progress: Callable[[int, int], None] | None = None) -> Bp3Table:
    """Search a 2-DPC for every canonical configuration.

    Configurations without one are kept with a ``None`` entry; the search is
    exhaustive, so these are proofs of non-existence.
    """
    from .verifier import verify_dpc

    keys = canonical_keys()
    entries = {}
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.map(_solve_key, keys, chunksize=256)
    else:
        results = []
        for i, key in enumerate(keys):
            results.append(_solve_key(key))
            if progress and i % 1000 == 0:
                progress(i, len(keys))
    R = Region.whole(3)
    for key, res in zip(keys, results):
        if res is None:
            log.warning("no 2-DPC of BP_3 for configuration %s", key)
        entries[key] = res
    table = Bp3Table(entries)
    for key in keys:
        if entries[key] is None:
            continue
        d = table.canonical(key)
        v, x, y = key
        bad = verify_dpc(R, d, ((_ID3, _BP3[v]), (_BP3[x], _BP3[y])))
        if bad is not None:
            raise DomainError(f"table entry {key} failed verification: {bad}")
    return table


def _record_line(key, entry) -> str:
    v, x, y = key
    k = ",".join(format_vertex(_BP3[i]) for i in (v, x, y))
    if entry is None:
        return f"{k} ; none"
    p, q = entry
    pp = ",".join(format_vertex(_BP3[i]) for i in p)
    qq = ",".join(format_vertex(_BP3[i]) for i in q)
    return f"{k} ; {pp} ; {qq}"


def save_table(t: Bp3Table, path) -> None:
    lines = [TABLE_HEADER]
    for key in sorted(t.entries):
        lines.append(_record_line(key, t.entries[key]))
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    path = FsPath(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(body + f"sha256 {digest}\n")
    tmp.replace(path)


def load_table(path, *, sample_fraction: float = 0.01, seed: int = 0) -> Bp3Table:
    from .verifier import verify_dpc

    text = FsPath(path).read_text()
    lines = text.split("\n")
    if not lines or lines[0] != TABLE_HEADER:
        found = lines[0] if lines else ""
        if found.startswith("BP3DPC"):
            raise TableVersionError(f"unsupported table version {found!r}, expected {TABLE_HEADER!r}")
        raise CorruptTableError("missing table header")
    if len(lines) < 2 or lines[-1] != "" or not lines[-2].startswith("sha256 "):
        raise CorruptTableError("missing checksum footer (truncated file?)")
    body = "\n".join(lines[:-2]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[-2].split()[1]:
        raise CorruptTableError("checksum mismatch")
    entries = {}
    try:
        for line in lines[1:-2]:
            fields = line.split(" ; ")
            key = tuple(rank(parse_vertex(s, 3)) for s in fields[0].split(","))
            if fields[1:] == ["none"]:
                entries[key] = None
                continue
            key_s, p_s, q_s = fields
            p = bytes(rank(parse_vertex(s, 3)) for s in p_s.split(","))
            q = bytes(rank(parse_vertex(s, 3)) for s in q_s.split(","))
            entries[key] = (p, q)
    except (ValueError, DomainError) as exc:
        raise CorruptTableError(f"malformed record: {exc}") from exc
    if len(entries) != TABLE_SIZE:
        raise CorruptTableError(f"expected {TABLE_SIZE} records, found {len(entries)}")
    table = Bp3Table(entries)
    rng = random.Random(seed)
    keys = sorted(k for k, e in entries.items() if e is not None)
    R = Region.whole(3)
    for key in rng.sample(keys, max(1, int(len(keys) * sample_fraction))):
        v, x, y = key
        bad = verify_dpc(R, table.canonical(key), ((_ID3, _BP3[v]), (_BP3[x], _BP3[y])))
        if bad is not None:
            raise CorruptTableError(f"record {key} fails verification: {bad}")
    return table


_active_table: Bp3Table | None = None


def default_table_path() -> FsPath:
    env = os.environ.get(TABLE_ENV)
    if env:
        return FsPath(env)
    return FsPath.home() / ".cache" / "bpdpc" / "bp3dpc_v1.txt"


def set_table(t: Bp3Table | None) -> None:
    global _active_table
    _active_table = t


def get_table() -> Bp3Table:
    """The table used by the constructions: loaded from disk, built on first use."""
    global _active_table
    if _active_table is None:
        path = default_table_path()
        if path.exists():
            _active_table = load_table(path)
        else:
            log.warning("BP_3 table not found at %s; building it (takes a few minutes)", path)
            _active_table = build_bp3_table()
            save_table(_active_table, path)
    return _active_table
