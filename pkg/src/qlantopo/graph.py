"""Finite undirected simple labeled graphs and the transforms used by the rewrite engine.

Graphs are immutable values. Every transform returns a new :class:`Graph`.
Vertex identifiers may be any hashable, mutually comparable values (ints,
tuples, strings or :class:`QlanLabel`); their natural order is used for
canonical edge orientation and for every deterministic tie-break.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from collections.abc import Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Any

from qlantopo.errors import InvalidSizeError, SimpleGraphError, UnknownVertexError

Vertex = Hashable
Edge = tuple[Any, Any]


class Role(enum.IntEnum):
    """Role of a qubit inside its QLAN. Super-nodes sort before clients."""

    SUPER = 0
    CLIENT = 1

    @property
    def tag(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, order=True)
class QlanLabel:
    """Network-wide identity of a qubit: ``(qlan_id, role, index)``.

    ``QlanLabel(1, Role.SUPER, 1)`` is the super-node qubit of QLAN 1 and
    ``QlanLabel(2, Role.CLIENT, 3)`` the third client of QLAN 2.
    """

    qlan_id: int
    role: Role
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"QLAN label index must be positive, got {self.index}")
        object.__setattr__(self, "role", Role(self.role))

    def __str__(self) -> str:
        return f"{self.qlan_id}_{self.role.tag}_{self.index}"

    @classmethod
    def parse(cls, text: str) -> QlanLabel:
        """Inverse of ``str()``: ``"2_client_1"`` -> ``QlanLabel(2, CLIENT, 1)``."""
        try:
            qlan, role, index = text.split("_")
            return cls(int(qlan), Role[role.upper()], int(index))
        except (ValueError, KeyError) as exc:
            raise ValueError(f"not a QLAN vertex label: {text!r}") from exc


def _pair(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u < v else (v, u)  # type: ignore[operator]


class Graph:
    """Immutable undirected simple graph stored as per-vertex adjacency sets.

    Parameters
    ----------
    vertices : Iterable
        Vertex identifiers. Duplicates are collapsed.
    edges : Iterable of pairs
        Unordered vertex pairs. Both endpoints must be listed in ``vertices``.

    Raises
    ------
    SimpleGraphError
        If an edge is a self-loop.
    UnknownVertexError
        If an edge endpoint is not a vertex.
    """

    __slots__ = ("_adj", "_hash")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = ()) -> None:
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise SimpleGraphError(f"self-loop on vertex {u!r}")
            for w in (u, v):
                if w not in adj:
                    raise UnknownVertexError(f"edge endpoint {w!r} is not a vertex")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: dict[Vertex, frozenset[Vertex]] = {v: frozenset(n) for v, n in adj.items()}
        self._hash: int | None = None

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[Vertex] = ()) -> Graph:
        """Build a graph whose vertex set is ``vertices`` plus every edge endpoint."""
        edges = list(edges)
        verts = list(vertices)
        verts.extend(w for e in edges for w in e)
        return cls(verts, edges)

    @classmethod
    def _from_adj(cls, adj: dict[Vertex, frozenset[Vertex]]) -> Graph:
        g = cls.__new__(cls)
        g._adj = adj
        g._hash = None
        return g

    @property
    def vertices(self) -> frozenset[Vertex]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(_pair(u, v) for u, nbrs in self._adj.items() for v in nbrs if u < v)  # type: ignore[operator]

    def sorted_vertices(self) -> list[Vertex]:
        return sorted(self._adj)  # type: ignore[type-var]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: Vertex) -> frozenset[Vertex]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def number_of_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.sorted_vertices())

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._adj), self.edges))
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"({u}, {v})" for u, v in self.sorted_edges())
        return f"Graph(n={len(self)}, edges=[{edges}])"


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring witness. Parts are disjoint, non-empty and cover the graph."""

    part1: frozenset
    part2: frozenset

    def validate(self, g: Graph) -> bool:
        """True iff this is a proper two-coloring of ``g`` with non-empty parts."""
        if not self.part1 or not self.part2 or self.part1 & self.part2:
            return False
        if self.part1 | self.part2 != g.vertices:
            return False
        return all((u in self.part1) != (v in self.part1) for u, v in g.edges)


def _require(g: Graph, v: Vertex) -> None:
    if v not in g:
        raise UnknownVertexError(f"unknown vertex {v!r}")


def neighborhood(g: Graph, i: Vertex) -> frozenset[Vertex]:
    """Vertices adjacent to ``i``."""
    return g.neighbors(i)


def induced_subgraph(g: Graph, a: Iterable[Vertex]) -> Graph:
    """Subgraph on ``a`` keeping every edge with both endpoints in ``a``."""
    keep = frozenset(a)
    for v in keep:
        _require(g, v)
    return Graph._from_adj({v: g._adj[v] & keep for v in keep})


def complement(g: Graph) -> Graph:
    """Same vertices; two vertices are adjacent iff they were not."""
    everything = frozenset(g._adj)
    return Graph._from_adj({v: everything - nbrs - {v} for v, nbrs in g._adj.items()})


def local_complement(g: Graph, i: Vertex) -> Graph:
    """Complement the subgraph induced by the neighborhood of ``i``.

    Edges incident to ``i`` and edges with an endpoint outside the
    neighborhood are left untouched.
    """
    nbrs = g.neighbors(i)
    if len(nbrs) < 2:
        return g
    adj = dict(g._adj)
    for u in nbrs:
        adj[u] = adj[u] ^ (nbrs - {u})
    return Graph._from_adj(adj)


def delete_vertex(g: Graph, i: Vertex) -> Graph:
    """Remove ``i`` together with its incident edges."""
    nbrs = g.neighbors(i)
    adj = dict(g._adj)
    del adj[i]
    for u in nbrs:
        adj[u] = adj[u] - {i}
    return Graph._from_adj(adj)


def graph_equal(g1: Graph, g2: Graph) -> bool:
    """Labeled equality: identical vertex sets and identical edge sets."""
    return g1 == g2


def is_two_colorable(g: Graph) -> Bipartition | None:
    """Return a two-coloring witness, or ``None`` when none exists.

    A witness needs two non-empty parts, so graphs with fewer than two
    vertices have none. Each connected component is colored by BFS starting
    from its smallest vertex, which goes to ``part1``; the component holding
    the overall smallest vertex therefore always lands in ``part1``. An
    edgeless graph would leave ``part2`` empty, in which case the last
    component is flipped.
    """
    if len(g) < 2:
        return None
    color: dict[Vertex, int] = {}
    components: list[list[Vertex]] = []
    for root in g.sorted_vertices():
        if root in color:
            continue
        color[root] = 0
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    comp.append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
        components.append(comp)
    if all(c == 0 for c in color.values()):
        for v in components[-1]:
            color[v] = 1
    part1 = frozenset(v for v, c in color.items() if c == 0)
    return Bipartition(part1, g.vertices - part1)


class Topology(enum.Enum):
    PATH = "path"
    EVEN_CYCLE = "even-cycle"
    STAR = "star"
    BINARY_STAR = "binary-star"
    COMPLETE_BIPARTITE = "complete-bipartite"
    COMPLETE = "complete"
    HYPERCUBE = "hypercube"
    TREE = "tree"


def _labels(n: int, labels: Sequence[Vertex] | None, default: Iterable[Vertex]) -> list[Vertex]:
    out = list(labels) if labels is not None else list(itertools.islice(default, n))
    if len(out) != n or len(set(out)) != n:
        raise InvalidSizeError(f"expected {n} distinct labels, got {out!r}")
    return out


def _two_parts(
    n1: int, n2: int, labels: tuple[Sequence[Vertex], Sequence[Vertex]] | None
) -> tuple[list[Vertex], list[Vertex]]:
    if labels is None:
        return [(1, k) for k in range(1, n1 + 1)], [(2, k) for k in range(1, n2 + 1)]
    p1, p2 = (_labels(n, part, ()) for n, part in zip((n1, n2), labels))
    if set(p1) & set(p2):
        raise InvalidSizeError("the two parts must not share labels")
    return p1, p2


def make_topology(
    kind: Topology | str,
    *sizes: int,
    labels: Any = None,
    parents: Sequence[int | None] | None = None,
) -> Graph:
    """Construct one of the named two-colorable families (plus complete graphs).

    Sizes per kind: ``PATH(n)``, ``EVEN_CYCLE(n)`` with even ``n >= 4``,
    ``COMPLETE(n)``, ``HYPERCUBE(d)`` on ``2**d`` vertices, ``STAR(n)`` with
    ``n - 1`` leaves, ``COMPLETE_BIPARTITE(n1, n2)``, ``BINARY_STAR(n1, n2)``
    and ``TREE`` built from ``parents`` (``parents[k]`` is the parent index of
    vertex ``k``, ``None`` for the root).

    Default labels are ``1..n`` for paths, cycles and complete graphs,
    ``0..2**d - 1`` for hypercubes (adjacent iff one bit differs), ``0..`` for
    trees, and ``(part, index)`` tuples for the bipartite families, e.g. the
    binary star center of part 1 is ``(1, 1)``. ``labels`` overrides them:
    a flat sequence for single-part kinds (for ``STAR`` the center comes
    first) or a ``(part1, part2)`` pair for ``COMPLETE_BIPARTITE`` and
    ``BINARY_STAR``.
    """
    kind = Topology(kind)
    if kind is Topology.TREE:
        if sizes or parents is None:
            raise InvalidSizeError("TREE takes an explicit parent list and no sizes")
        return _tree(parents, labels)
    expected = 2 if kind in (Topology.COMPLETE_BIPARTITE, Topology.BINARY_STAR) else 1
    if len(sizes) != expected:
        raise InvalidSizeError(f"{kind.name} takes {expected} size(s), got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise InvalidSizeError(f"sizes must be positive, got {sizes}")

    if kind in (Topology.COMPLETE_BIPARTITE, Topology.BINARY_STAR):
        p1, p2 = _two_parts(sizes[0], sizes[1], labels)
        if kind is Topology.COMPLETE_BIPARTITE:
            edges = list(itertools.product(p1, p2))
        else:
            edges = [(p1[0], v) for v in p2] + [(u, p2[0]) for u in p1[1:]]
        return Graph(p1 + p2, edges)

    (n,) = sizes
    if kind is Topology.STAR:
        default = itertools.chain([(1, 1)], ((2, k) for k in itertools.count(1)))
        vs = _labels(n, labels, default)
        return Graph(vs, [(vs[0], v) for v in vs[1:]])
    if kind is Topology.HYPERCUBE:
        vs = _labels(2**n, labels, itertools.count(0))
        edges = [(vs[a], vs[a ^ (1 << b)]) for a in range(2**n) for b in range(n) if not a & (1 << b)]
        return Graph(vs, edges)

    vs = _labels(n, labels, itertools.count(1))
    if kind is Topology.PATH:
        return Graph(vs, zip(vs, vs[1:]))
    if kind is Topology.EVEN_CYCLE:
        if n < 4 or n % 2:
            raise InvalidSizeError(f"even cycle needs an even length >= 4, got {n}")
        return Graph(vs, zip(vs, vs[1:] + vs[:1]))
    return Graph(vs, itertools.combinations(vs, 2))


def _tree(parents: Sequence[int | None], labels: Sequence[Vertex] | None) -> Graph:
    n = len(parents)
    if n < 1:
        raise InvalidSizeError("a tree needs at least one vertex")
    roots = [k for k, p in enumerate(parents) if p is None]
    if len(roots) != 1:
        raise InvalidSizeError(f"a tree needs exactly one root, got {len(roots)}")
    vs = _labels(n, labels, itertools.count(0))
    edges = []
    for k, p in enumerate(parents):
        if p is None:
            continue
        if not 0 <= p < n or p == k:
            raise InvalidSizeError(f"invalid parent {p} for vertex {k}")
        edges.append((vs[p], vs[k]))
    g = Graph(vs, edges)
    # n - 1 edges and connected <=> tree
    seen = {vs[roots[0]]}
    queue = deque(seen)
    while queue:
        for w in g.neighbors(queue.popleft()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != n:
        raise InvalidSizeError("parent list contains a cycle")
    return g
