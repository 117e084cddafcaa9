"""Local-complementation orbits and labeled LC equivalence.

Two graph states are related by single-qubit Cliffords iff their graphs are
related by a sequence of local complementations, so a breadth-first search
over ``tau_v`` moves decides equivalence at desk scale. Vertex labels are
kept fixed; equivalence up to relabeling is not considered.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from qlantopo.errors import CapExceededError, SizeLimitError
from qlantopo.graph import Graph, Vertex

DEFAULT_CAP = 200_000
ORBIT_VERTEX_LIMIT = 10

Masks = tuple[int, ...]

# completed orbits, keyed by (vertex tuple, adjacency masks) of every member
_orbit_cache: dict[tuple[tuple[Vertex, ...], Masks], frozenset[Masks]] = {}
_CACHE_LIMIT = 500_000


def _masks(g: Graph) -> tuple[tuple[Vertex, ...], Masks]:
    vs = tuple(g.sorted_vertices())
    index = {v: k for k, v in enumerate(vs)}
    adj = []
    for v in vs:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << index[u]
        adj.append(m)
    return vs, tuple(adj)


def _to_graph(vs: tuple[Vertex, ...], adj: Masks) -> Graph:
    n = len(vs)
    edges = [(vs[a], vs[b]) for a in range(n) for b in range(a + 1, n) if adj[a] >> b & 1]
    return Graph(vs, edges)


def _tau(adj: Masks, v: int) -> Masks:
    nbrs = adj[v]
    if nbrs & (nbrs - 1) == 0:  # degree <= 1
        return adj
    out = list(adj)
    m = nbrs
    while m:
        low = m & -m
        u = low.bit_length() - 1
        out[u] ^= nbrs & ~low
        m ^= low
    return tuple(out)


def _bfs(adj: Masks, cap: int) -> tuple[set[Masks], bool]:
    """Explore the orbit of ``adj``. Returns the graphs seen and whether the orbit is complete."""
    seen = {adj}
    queue = deque([adj])
    n = len(adj)
    while queue:
        cur = queue.popleft()
        for v in range(n):
            nxt = _tau(cur, v)
            if nxt in seen:
                continue
            if len(seen) >= cap:
                return seen, False
            seen.add(nxt)
            queue.append(nxt)
    return seen, True


def _remember(vs: tuple[Vertex, ...], orbit: frozenset[Masks]) -> None:
    if len(_orbit_cache) + len(orbit) > _CACHE_LIMIT:
        _orbit_cache.clear()
    for member in orbit:
        _orbit_cache[(vs, member)] = orbit


@dataclass(frozen=True)
class LcOrbit:
    graphs: frozenset[Graph]
    complete: bool

    def __len__(self) -> int:
        return len(self.graphs)

    def __contains__(self, g: object) -> bool:
        return g in self.graphs


def lc_orbit_size(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Size of the LC orbit of ``g``; raises if the orbit exceeds ``cap``."""
    vs, adj = _masks(g)
    cached = _orbit_cache.get((vs, adj))
    if cached is not None:
        return len(cached)
    seen, complete = _bfs(adj, cap)
    if not complete:
        raise CapExceededError(f"LC orbit larger than cap={cap}")
    _remember(vs, frozenset(seen))
    return len(seen)


def lc_orbit(g: Graph, cap: int = DEFAULT_CAP) -> LcOrbit:
    """Closure of ``g`` under local complementation at every vertex.

    Stops after ``cap`` graphs and returns the partial orbit with
    ``complete=False``.
    """
    if len(g) > ORBIT_VERTEX_LIMIT:
        raise SizeLimitError(f"orbit enumeration is limited to {ORBIT_VERTEX_LIMIT} vertices")
    vs, adj = _masks(g)
    orbit = _orbit_cache.get((vs, adj))
    complete = orbit is not None
    if orbit is None:
        seen, complete = _bfs(adj, cap)
        orbit = frozenset(seen)
        if complete:
            _remember(vs, orbit)
    return LcOrbit(frozenset(_to_graph(vs, m) for m in orbit), complete)


def lc_equivalent(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> bool:
    """True iff ``g2`` is reachable from ``g1`` by local complementations.

    Graphs on different vertex sets are never equivalent (labels are fixed).
    Raises :class:`CapExceededError` when the search hits ``cap`` without
    deciding.
    """
    if len(g1) != len(g2):
        raise ValueError(f"vertex counts differ: {len(g1)} vs {len(g2)}")
    if g1.vertices != g2.vertices:
        return False
    vs, a1 = _masks(g1)
    _, a2 = _masks(g2)
    cached = _orbit_cache.get((vs, a1))
    if cached is not None:
        return a2 in cached
    # whole orbits are explored so that later queries hit the cache
    seen, complete = _bfs(a1, cap)
    if complete:
        _remember(vs, frozenset(seen))
    elif a2 not in seen:
        raise CapExceededError(f"LC search exceeded cap={cap} without reaching the target")
    return a2 in seen


def lc_path(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> list[Vertex] | None:
    """Shortest vertex sequence ``v1, v2, ...`` with ``tau_...(tau_v1(g1)) = g2``.

    Returns None when ``g2`` is outside the orbit of ``g1``.
    """
    if g1.vertices != g2.vertices:
        return None
    vs, a1 = _masks(g1)
    _, a2 = _masks(g2)
    parent: dict[Masks, tuple[Masks, int] | None] = {a1: None}
    queue = deque([a1])
    while queue and a2 not in parent:
        cur = queue.popleft()
        for v in range(len(vs)):
            nxt = _tau(cur, v)
            if nxt in parent:
                continue
            if len(parent) >= cap:
                raise CapExceededError(f"LC path search exceeded cap={cap}")
            parent[nxt] = (cur, v)
            queue.append(nxt)
    if a2 not in parent:
        return None
    path = []
    node = a2
    while parent[node] is not None:
        node, v = parent[node]  # type: ignore[misc]
        path.append(vs[v])
    return path[::-1]
