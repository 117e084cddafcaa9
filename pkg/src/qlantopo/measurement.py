"""Graph rewrites induced by single-qubit Pauli measurements on graph states.

Measuring qubit ``i`` of ``|G>`` leaves the unmeasured qubits in a state that
is local-unitary equivalent to the graph state of

* ``Z``: ``G - i``
* ``Y``: ``tau_i(G) - i``
* ``X``: ``tau_k0(tau_i(tau_k0(G)) - i)`` for a neighbor ``k0`` of ``i``

where ``tau`` is local complementation. Outcome signs only change the local
correction, so the rewrite engine is outcome independent.
"""

from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from qlantopo.errors import InvalidK0Error, SizeLimitError, TopologyError
from qlantopo.graph import Graph, Vertex, delete_vertex, local_complement
from qlantopo.serialize import decode_vertex, encode_vertex

#: Soft cap on graph size for the rewrite engine. Not a mathematical limit.
REWRITE_VERTEX_LIMIT = 64


class PauliBasis(str, enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


@dataclass(frozen=True)
class MeasurementSpec:
    """One Pauli measurement. ``k0`` pins the special neighbor of an X measurement."""

    vertex: Vertex
    basis: PauliBasis
    k0: Vertex | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", PauliBasis(self.basis))
        if self.k0 is not None and self.basis is not PauliBasis.X:
            raise InvalidK0Error(f"k0 is only meaningful for X measurements, got basis {self.basis.value}")

    def __str__(self) -> str:
        k0 = f" k0={self.k0}" if self.k0 is not None else ""
        return f"{self.basis.value} {self.vertex}{k0}"

    def to_json(self) -> dict[str, Any]:
        return {
            "vertex": encode_vertex(self.vertex),
            "basis": self.basis.value,
            "k0": None if self.k0 is None else encode_vertex(self.k0),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> MeasurementSpec:
        k0 = obj.get("k0")
        return cls(decode_vertex(obj["vertex"]), PauliBasis(obj["basis"]), None if k0 is None else decode_vertex(k0))


@dataclass(frozen=True)
class TraceEntry:
    spec: MeasurementSpec
    resolved_k0: Vertex | None
    vertices_before: int

    def to_json(self) -> dict[str, Any]:
        return {
            **self.spec.to_json(),
            "resolved_k0": None if self.resolved_k0 is None else encode_vertex(self.resolved_k0),
            "vertices_before": self.vertices_before,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> TraceEntry:
        k0 = obj.get("resolved_k0")
        return cls(MeasurementSpec.from_json(obj), None if k0 is None else decode_vertex(k0), obj["vertices_before"])


MeasurementTrace = tuple[TraceEntry, ...]


def default_k0(g: Graph, i: Vertex) -> Vertex | None:
    """Smallest neighbor of ``i``, or ``None`` if ``i`` is isolated."""
    nbrs = g.neighbors(i)
    return min(nbrs) if nbrs else None  # type: ignore[type-var]


def measure(g: Graph, spec: MeasurementSpec) -> tuple[Graph, TraceEntry]:
    """Apply one Pauli measurement rewrite and remove the measured vertex.

    An X measurement on an isolated vertex degenerates to deletion. When
    ``spec.k0`` is ``None`` the smallest neighbor is used.
    """
    i = spec.vertex
    nbrs = g.neighbors(i)
    k0 = None
    if spec.basis is PauliBasis.Z:
        out = delete_vertex(g, i)
    elif spec.basis is PauliBasis.Y:
        out = delete_vertex(local_complement(g, i), i)
    elif not nbrs:
        if spec.k0 is not None:
            raise InvalidK0Error(f"k0={spec.k0!r} is not a neighbor of isolated vertex {i!r}")
        out = delete_vertex(g, i)
    else:
        k0 = default_k0(g, i) if spec.k0 is None else spec.k0
        if k0 not in nbrs:
            raise InvalidK0Error(f"k0={k0!r} is not a neighbor of {i!r}")
        out = local_complement(delete_vertex(local_complement(local_complement(g, k0), i), i), k0)
    return out, TraceEntry(spec, k0, len(g))


def measure_sequence(
    g: Graph, specs: Iterable[MeasurementSpec], limit: int = REWRITE_VERTEX_LIMIT
) -> tuple[Graph, MeasurementTrace]:
    """Left fold of :func:`measure`. Errors carry the failing step index."""
    if len(g) > limit:
        raise SizeLimitError(f"graph has {len(g)} vertices, rewrite limit is {limit}")
    trace = []
    for step, spec in enumerate(specs):
        try:
            g, entry = measure(g, spec)
        except TopologyError as exc:
            raise exc.at_step(step) from exc
        trace.append(entry)
    return g, tuple(trace)


def specs_to_json(specs: Sequence[MeasurementSpec]) -> list[dict[str, Any]]:
    return [s.to_json() for s in specs]


def specs_from_json(obj: Sequence[dict[str, Any]]) -> list[MeasurementSpec]:
    return [MeasurementSpec.from_json(s) for s in obj]


def trace_to_jsonl(trace: Sequence[TraceEntry]) -> str:
    return "".join(json.dumps({"step": k, **e.to_json()}) + "\n" for k, e in enumerate(trace))
