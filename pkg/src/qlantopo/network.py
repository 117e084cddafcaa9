"""Two-QLAN system model: star distribution, remote-CZ merge and EPR accounting.

Each QLAN holds a star graph state centered at its super-node. The
teleportation-based distribution costs one EPR pair per client; merging the
two stars into a binary star costs exactly one inter-QLAN EPR pair,
whatever the QLAN sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from qlantopo.errors import AlreadyMergedError, InvalidSizeError, NotMergedError, UnknownLabelError
from qlantopo.graph import Bipartition, Graph, QlanLabel, Role, Topology, Vertex, make_topology
from qlantopo.serialize import encode_vertex, graph_from_json, graph_to_json


@dataclass(frozen=True)
class ResourceLedger:
    epr_generated: int = 0
    epr_consumed_intra: int = 0
    epr_consumed_inter: int = 0

    def __post_init__(self) -> None:
        if min(self.epr_generated, self.epr_consumed_intra, self.epr_consumed_inter) < 0:
            raise ValueError("ledger counts must be non-negative")

    def __add__(self, other: ResourceLedger) -> ResourceLedger:
        return ResourceLedger(
            self.epr_generated + other.epr_generated,
            self.epr_consumed_intra + other.epr_consumed_intra,
            self.epr_consumed_inter + other.epr_consumed_inter,
        )

    def to_json(self) -> dict[str, int]:
        return {
            "epr_generated": self.epr_generated,
            "epr_consumed_intra": self.epr_consumed_intra,
            "epr_consumed_inter": self.epr_consumed_inter,
        }


@dataclass(frozen=True)
class Qlan:
    id: int
    super_vertex: QlanLabel
    client_vertices: tuple[QlanLabel, ...]
    state_graph: Graph

    @property
    def size(self) -> int:
        return 1 + len(self.client_vertices)

    def client(self, index: int) -> QlanLabel:
        """Client ``index`` (1-based)."""
        if not 1 <= index <= len(self.client_vertices):
            raise UnknownLabelError(f"QLAN {self.id} has no client {index}")
        return self.client_vertices[index - 1]

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "super_vertex": encode_vertex(self.super_vertex),
            "client_vertices": [encode_vertex(v) for v in self.client_vertices],
            "state_graph": graph_to_json(self.state_graph),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Qlan:
        return cls(
            obj["id"],
            QlanLabel.parse(obj["super_vertex"]),
            tuple(QlanLabel.parse(v) for v in obj["client_vertices"]),
            graph_from_json(obj["state_graph"]),
        )


def build_qlan(qlan_id: int, n: int) -> tuple[Qlan, ResourceLedger]:
    """Star state on ``n`` nodes: the super-node plus ``n - 1`` clients.

    Returns the QLAN and the ledger delta of its distribution (one EPR pair
    generated and consumed per client).
    """
    if n < 1:
        raise InvalidSizeError(f"a QLAN needs at least one node, got {n}")
    center = QlanLabel(qlan_id, Role.SUPER, 1)
    clients = tuple(QlanLabel(qlan_id, Role.CLIENT, k) for k in range(1, n))
    star = make_topology(Topology.STAR, n, labels=(center, *clients))
    return Qlan(qlan_id, center, clients, star), ResourceLedger(n - 1, n - 1, 0)


@dataclass(frozen=True)
class QlanNetwork:
    qlan1: Qlan
    qlan2: Qlan
    shared_graph: Graph | None = None
    ledger: ResourceLedger = field(default_factory=ResourceLedger)

    @property
    def merged(self) -> bool:
        return self.shared_graph is not None

    def qlan(self, qlan_id: int) -> Qlan:
        for q in (self.qlan1, self.qlan2):
            if q.id == qlan_id:
                return q
        raise UnknownLabelError(f"no QLAN with id {qlan_id}")

    def to_json(self) -> dict[str, Any]:
        return {
            "qlan1": self.qlan1.to_json(),
            "qlan2": self.qlan2.to_json(),
            "shared_graph": None if self.shared_graph is None else graph_to_json(self.shared_graph),
            "ledger": self.ledger.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> QlanNetwork:
        shared = obj.get("shared_graph")
        return cls(
            Qlan.from_json(obj["qlan1"]),
            Qlan.from_json(obj["qlan2"]),
            None if shared is None else graph_from_json(shared),
            ResourceLedger(**obj["ledger"]),
        )


def build_network(n1: int, n2: int) -> QlanNetwork:
    q1, d1 = build_qlan(1, n1)
    q2, d2 = build_qlan(2, n2)
    return QlanNetwork(q1, q2, None, d1 + d2)


def merge_remote_cz(net: QlanNetwork) -> QlanNetwork:
    """Join the two stars with one edge between the super-nodes.

    The remote CZ consumes the single EPR pair shared by the super-nodes.
    """
    if net.merged:
        raise AlreadyMergedError("the QLANs are already merged")
    a, b = net.qlan1, net.qlan2
    edges = a.state_graph.edges | b.state_graph.edges | {(a.super_vertex, b.super_vertex)}
    shared = Graph(a.state_graph.vertices | b.state_graph.vertices, edges)
    return replace(net, shared_graph=shared, ledger=net.ledger + ResourceLedger(1, 0, 1))


def recolored_parts(net: QlanNetwork) -> Bipartition:
    """Parts of the merged binary star: each super-node sides with the other QLAN's clients."""
    if not net.merged:
        raise NotMergedError("recoloring needs a merged network")
    a, b = net.qlan1, net.qlan2
    return Bipartition(
        frozenset((a.super_vertex, *b.client_vertices)),
        frozenset((b.super_vertex, *a.client_vertices)),
    )


def binary_star_labels(net: QlanNetwork) -> tuple[list[QlanLabel], list[QlanLabel]]:
    """Label lists that make ``make_topology(BINARY_STAR, ...)`` coincide with the merged graph.

    Part 1 is QLAN 1's super-node followed by QLAN 2's clients; part 2 is
    QLAN 2's super-node followed by QLAN 1's clients. The first entry of
    each part is that part's hub.
    """
    a, b = net.qlan1, net.qlan2
    return [a.super_vertex, *b.client_vertices], [b.super_vertex, *a.client_vertices]


def reference_binary_star(net: QlanNetwork) -> Graph:
    """The binary star built directly by the topology constructor, under the merge labeling."""
    p1, p2 = binary_star_labels(net)
    return make_topology(Topology.BINARY_STAR, len(p1), len(p2), labels=(p1, p2))


def lookup_vertex(net: QlanNetwork, qlan_id: int, role: Role | str, index: int) -> Vertex:
    role = Role[role.upper()] if isinstance(role, str) else Role(role)
    try:
        q = net.qlan(qlan_id)
    except UnknownLabelError:
        raise UnknownLabelError(f"unknown label ({qlan_id}, {role.tag}, {index})") from None
    if role is Role.SUPER:
        if index != 1:
            raise UnknownLabelError(f"QLAN {qlan_id} has a single super-node, got index {index}")
        return q.super_vertex
    try:
        return q.client(index)
    except UnknownLabelError:
        raise UnknownLabelError(f"unknown label ({qlan_id}, {role.tag}, {index})") from None
