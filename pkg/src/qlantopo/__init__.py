"""Graph-state rewrites for shaping artificial topologies across two quantum LANs."""

from qlantopo.graph import (
    Bipartition,
    Graph,
    QlanLabel,
    Role,
    Topology,
    complement,
    delete_vertex,
    induced_subgraph,
    is_two_colorable,
    local_complement,
    make_topology,
    neighborhood,
)
from qlantopo.measurement import MeasurementSpec, PauliBasis, measure, measure_sequence
from qlantopo.network import QlanNetwork, ResourceLedger, build_network, merge_remote_cz
from qlantopo.recipes import RecipeKind, RecipeParams, Side, apply, restrict_to_subset

__all__ = [
    "Bipartition",
    "Graph",
    "MeasurementSpec",
    "PauliBasis",
    "QlanLabel",
    "QlanNetwork",
    "RecipeKind",
    "RecipeParams",
    "ResourceLedger",
    "Role",
    "Side",
    "Topology",
    "apply",
    "build_network",
    "complement",
    "delete_vertex",
    "induced_subgraph",
    "is_two_colorable",
    "local_complement",
    "make_topology",
    "measure",
    "measure_sequence",
    "merge_remote_cz",
    "neighborhood",
    "restrict_to_subset",
]
