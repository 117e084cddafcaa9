"""Named artificial-topology recipes over the merged binary star.

Each recipe is a measurement plan plus the closed-form graph the plan must
produce. Plans are written for ``Side.RIGHT``: the target topology involves
the clients of QLAN 2 and the measurements that prepare it start in QLAN 1.
``Side.LEFT`` mirrors the network (QLAN 2 plays the role of QLAN 1 and vice
versa) before planning.

Parameter indices follow that frame. ``client_j`` selects a client of the
source QLAN (QLAN 1 on the right side) and ``client_i`` a client of the
target QLAN (QLAN 2 on the right side).
"""

from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from qlantopo.errors import InvalidParamsError, NotMergedError, UnknownLabelError
from qlantopo.graph import Graph, QlanLabel, Topology, Vertex, graph_equal, induced_subgraph, make_topology
from qlantopo.measurement import MeasurementSpec, MeasurementTrace, PauliBasis, TraceEntry, measure_sequence
from qlantopo.network import Qlan, QlanNetwork
from qlantopo.serialize import decode_vertex, encode_vertex, graph_from_json, graph_to_json

X, Y, Z = PauliBasis.X, PauliBasis.Y, PauliBasis.Z


class RecipeKind(enum.Enum):
    """Recipe identifiers; values are the CLI names."""

    HIERARCHICAL_PEER_TO_PEER = "p2p-hier"
    ROLE_DELEGATION_I = "role-del-1"
    CLIENTS_HAND_OVER = "handover"
    PURE_PEER_TO_PEER = "p2p-pure"
    ROLE_DELEGATION_II_CASE1 = "role-del-2a"
    ROLE_DELEGATION_II_CASE2 = "role-del-2b"
    EXTRANET = "extranet"
    DOUBLE_ROLE_DELEGATION = "double-role-del"
    STAR_RECENTER = "star-recenter"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


_NEEDS_J = {
    RecipeKind.PURE_PEER_TO_PEER,
    RecipeKind.ROLE_DELEGATION_II_CASE1,
    RecipeKind.ROLE_DELEGATION_II_CASE2,
    RecipeKind.DOUBLE_ROLE_DELEGATION,
    RecipeKind.STAR_RECENTER,
}
_NEEDS_I = {
    RecipeKind.ROLE_DELEGATION_I,
    RecipeKind.ROLE_DELEGATION_II_CASE1,
    RecipeKind.DOUBLE_ROLE_DELEGATION,
}


def required_params(kind: RecipeKind) -> tuple[str, ...]:
    return tuple(p for p, need in (("client_j", _NEEDS_J), ("client_i", _NEEDS_I)) if kind in need)


@dataclass(frozen=True)
class RecipeParams:
    side: Side = Side.RIGHT
    client_j: int | None = None
    client_i: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", Side(self.side))

    def to_json(self) -> dict[str, Any]:
        return {"side": self.side.value, "client_j": self.client_j, "client_i": self.client_i}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> RecipeParams:
        return cls(Side(obj["side"]), obj.get("client_j"), obj.get("client_i"))


@dataclass(frozen=True)
class _Frame:
    src: Qlan
    dst: Qlan
    j: QlanLabel | None
    i: QlanLabel | None


def _frame(net: QlanNetwork, kind: RecipeKind, params: RecipeParams) -> _Frame:
    if kind is not RecipeKind.STAR_RECENTER and not net.merged:
        raise NotMergedError(f"{kind.value} needs the merged binary star")
    src, dst = (net.qlan1, net.qlan2) if params.side is Side.RIGHT else (net.qlan2, net.qlan1)
    picked: dict[str, QlanLabel | None] = {}
    for name, need, qlan in (("client_j", _NEEDS_J, src), ("client_i", _NEEDS_I, dst)):
        value = getattr(params, name)
        if kind not in need:
            if value is not None:
                raise InvalidParamsError(f"{kind.value} does not take {name}")
            picked[name] = None
            continue
        if value is None:
            raise InvalidParamsError(f"{kind.value} requires {name}")
        try:
            picked[name] = qlan.client(value)
        except UnknownLabelError:
            raise InvalidParamsError(
                f"{name}={value} out of range: QLAN {qlan.id} has {len(qlan.client_vertices)} client(s)"
            ) from None
    return _Frame(src, dst, picked["client_j"], picked["client_i"])


def _star(center: Vertex, leaves: Iterable[Vertex]) -> Graph:
    leaves = sorted(leaves)  # type: ignore[type-var]
    return make_topology(Topology.STAR, 1 + len(leaves), labels=[center, *leaves])


def _complete(vertices: Iterable[Vertex]) -> Graph:
    vs = sorted(vertices)  # type: ignore[type-var]
    return Graph(vs, itertools.combinations(vs, 2))


def base_graph(net: QlanNetwork, kind: RecipeKind, params: RecipeParams) -> Graph:
    """Graph the plan is applied to: the source QLAN's own star for STAR_RECENTER, else the binary star."""
    f = _frame(net, kind, params)
    if kind is RecipeKind.STAR_RECENTER:
        return f.src.state_graph
    assert net.shared_graph is not None
    return net.shared_graph


def plan(net: QlanNetwork, kind: RecipeKind, params: RecipeParams | None = None) -> list[MeasurementSpec]:
    """Measurement sequence realizing ``kind``, with every pinned ``k0`` explicit."""
    params = params or RecipeParams()
    f = _frame(net, kind, params)
    s, d = f.src, f.dst
    drop_src_clients = [MeasurementSpec(c, Z) for c in s.client_vertices]
    drop_src_but_j = [MeasurementSpec(c, Z) for c in s.client_vertices if c != f.j]
    K = RecipeKind
    if kind is K.HIERARCHICAL_PEER_TO_PEER:
        return [*drop_src_clients, MeasurementSpec(d.super_vertex, Y)]
    if kind is K.ROLE_DELEGATION_I:
        return [*drop_src_clients, MeasurementSpec(d.super_vertex, X, f.i)]
    if kind is K.CLIENTS_HAND_OVER:
        return [*drop_src_clients, MeasurementSpec(d.super_vertex, X, s.super_vertex)]
    if kind is K.PURE_PEER_TO_PEER:
        return [*drop_src_but_j, MeasurementSpec(s.super_vertex, Y), MeasurementSpec(d.super_vertex, Y)]
    if kind is K.ROLE_DELEGATION_II_CASE1:
        return [*drop_src_but_j, MeasurementSpec(s.super_vertex, Y), MeasurementSpec(d.super_vertex, X, f.i)]
    if kind is K.ROLE_DELEGATION_II_CASE2:
        return [*drop_src_but_j, MeasurementSpec(s.super_vertex, Y), MeasurementSpec(d.super_vertex, X, f.j)]
    if kind is K.EXTRANET:
        return [MeasurementSpec(s.super_vertex, X, d.super_vertex), MeasurementSpec(d.super_vertex, Z)]
    if kind is K.DOUBLE_ROLE_DELEGATION:
        return [MeasurementSpec(s.super_vertex, X, f.j), MeasurementSpec(d.super_vertex, X, f.i)]
    if kind is K.STAR_RECENTER:
        return [MeasurementSpec(s.super_vertex, X, f.j)]
    raise AssertionError(kind)


def expected_graph(net: QlanNetwork, kind: RecipeKind, params: RecipeParams | None = None) -> Graph:
    """Closed-form target of ``kind``, built without running any measurement."""
    params = params or RecipeParams()
    f = _frame(net, kind, params)
    s, d = f.src, f.dst
    d_clients = set(d.client_vertices)
    K = RecipeKind
    if kind is K.HIERARCHICAL_PEER_TO_PEER:
        return _complete({s.super_vertex} | d_clients)
    if kind is K.ROLE_DELEGATION_I:
        return _star(f.i, ({s.super_vertex} | d_clients) - {f.i})
    if kind is K.CLIENTS_HAND_OVER:
        return _star(s.super_vertex, d_clients)
    if kind is K.PURE_PEER_TO_PEER:
        return _complete({f.j} | d_clients)
    if kind is K.ROLE_DELEGATION_II_CASE1:
        return _star(f.i, ({f.j} | d_clients) - {f.i})
    if kind is K.ROLE_DELEGATION_II_CASE2:
        return _star(f.j, d_clients)
    if kind is K.EXTRANET:
        if not (s.client_vertices and d.client_vertices):
            return Graph(s.client_vertices + d.client_vertices)
        return make_topology(
            Topology.COMPLETE_BIPARTITE,
            len(s.client_vertices),
            len(d.client_vertices),
            labels=(s.client_vertices, d.client_vertices),
        )
    if kind is K.DOUBLE_ROLE_DELEGATION:
        # hubs j and i are linked and each keeps the other clients of its own QLAN,
        # so j sits in a part with the target's remaining clients
        src_rest = [c for c in s.client_vertices if c != f.j]
        dst_rest = [c for c in d.client_vertices if c != f.i]
        return make_topology(
            Topology.BINARY_STAR,
            1 + len(dst_rest),
            1 + len(src_rest),
            labels=([f.j, *dst_rest], [f.i, *src_rest]),
        )
    if kind is K.STAR_RECENTER:
        return _star(f.j, set(s.client_vertices) - {f.j})
    raise AssertionError(kind)


@dataclass(frozen=True)
class RecipeReport:
    kind: RecipeKind
    params: RecipeParams
    plan: tuple[MeasurementSpec, ...]
    result: Graph
    expected: Graph
    matched: bool
    trace: MeasurementTrace
    keep: tuple[Vertex, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "params": self.params.to_json(),
            "keep": None if self.keep is None else [encode_vertex(v) for v in self.keep],
            "plan": [s.to_json() for s in self.plan],
            "result": graph_to_json(self.result),
            "expected": graph_to_json(self.expected),
            "matched": self.matched,
            "trace": [e.to_json() for e in self.trace],
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> RecipeReport:
        keep = obj.get("keep")
        return cls(
            RecipeKind(obj["kind"]),
            RecipeParams.from_json(obj["params"]),
            tuple(MeasurementSpec.from_json(s) for s in obj["plan"]),
            graph_from_json(obj["result"]),
            graph_from_json(obj["expected"]),
            obj["matched"],
            tuple(TraceEntry.from_json(e) for e in obj["trace"]),
            None if keep is None else tuple(decode_vertex(v) for v in keep),
        )


def apply(net: QlanNetwork, kind: RecipeKind, params: RecipeParams | None = None) -> RecipeReport:
    """Run the plan on the rewrite engine and compare with the closed form."""
    params = params or RecipeParams()
    steps = plan(net, kind, params)
    expected = expected_graph(net, kind, params)
    result, trace = measure_sequence(base_graph(net, kind, params), steps)
    return RecipeReport(kind, params, tuple(steps), result, expected, graph_equal(result, expected), trace)


def restrict_to_subset(
    steps: Sequence[MeasurementSpec], target: Graph, keep: Iterable[Vertex]
) -> tuple[list[MeasurementSpec], Graph]:
    """Append Z measurements that trim ``target`` down to ``keep``.

    Returns the extended plan and the trimmed target, which is the subgraph
    of ``target`` induced by ``keep``.
    """
    keep = frozenset(keep)
    if not keep:
        raise InvalidParamsError("keep must not be empty")
    extra = keep - target.vertices
    if extra:
        raise InvalidParamsError(f"keep has vertices outside the target: {sorted(map(str, extra))}")
    drop = [MeasurementSpec(v, Z) for v in target.sorted_vertices() if v not in keep]
    return [*steps, *drop], induced_subgraph(target, keep)


def restrict_report(net: QlanNetwork, report: RecipeReport, keep: Iterable[Vertex]) -> RecipeReport:
    """Re-run ``report``'s recipe with the plan trimmed to ``keep``."""
    keep = tuple(sorted(keep))  # type: ignore[type-var]
    steps, expected = restrict_to_subset(report.plan, report.expected, keep)
    result, trace = measure_sequence(base_graph(net, report.kind, report.params), steps)
    return RecipeReport(
        report.kind, report.params, tuple(steps), result, expected, graph_equal(result, expected), trace, keep
    )
