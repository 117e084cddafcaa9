"""JSON and DOT encodings for graphs and vertex identifiers.

Graph JSON::

    {"vertices": [{"id": "1_super_1", "label": {"qlan_id": 1, "role": "super", "index": 1}}, ...],
     "edges": [["1_super_1", "1_client_1"], ...]}

Vertices and edges are emitted in vertex order, so the output is stable.
"""

from __future__ import annotations

import json
from typing import Any

from qlantopo.graph import Graph, QlanLabel, Role, Vertex


def encode_vertex(v: Vertex) -> Any:
    if isinstance(v, QlanLabel):
        return str(v)
    if isinstance(v, tuple):
        return [encode_vertex(x) for x in v]
    return v


def decode_vertex(obj: Any) -> Vertex:
    """Inverse of :func:`encode_vertex`. Strings shaped like ``1_super_1`` become labels."""
    if isinstance(obj, list):
        return tuple(decode_vertex(x) for x in obj)
    if isinstance(obj, str):
        try:
            return QlanLabel.parse(obj)
        except ValueError:
            return obj
    return obj


def _label_json(v: Vertex) -> dict[str, Any] | None:
    if not isinstance(v, QlanLabel):
        return None
    return {"qlan_id": v.qlan_id, "role": v.role.tag, "index": v.index}


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {
        "vertices": [{"id": encode_vertex(v), "label": _label_json(v)} for v in g.sorted_vertices()],
        "edges": [[encode_vertex(u), encode_vertex(v)] for u, v in g.sorted_edges()],
    }


def graph_from_json(obj: dict[str, Any]) -> Graph:
    vertices = []
    for entry in obj["vertices"]:
        label = entry.get("label")
        if label is not None:
            vertices.append(QlanLabel(label["qlan_id"], Role[label["role"].upper()], label["index"]))
        else:
            vertices.append(decode_vertex(entry["id"]))
    edges = [(decode_vertex(u), decode_vertex(v)) for u, v in obj["edges"]]
    return Graph(vertices, edges)


def dumps(obj: Any) -> str:
    """Canonical JSON text used for every file the package writes."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def dot_id(v: Vertex) -> str:
    if isinstance(v, bool):
        return f'"{v}"'
    if isinstance(v, int):
        return str(v)
    if isinstance(v, tuple):
        text = "v" + "_".join(str(x) for x in v)
    else:
        text = str(v)
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: Graph, name: str = "G") -> str:
    """Graphviz text: one line per vertex, then one ``a -- b;`` line per edge, both sorted."""
    lines = [f"graph {name} {{"]
    lines.extend(f"  {dot_id(v)};" for v in g.sorted_vertices())
    lines.extend(f"  {dot_id(u)} -- {dot_id(v)};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
