"""Check rewrite-engine outputs against simulated projective measurements.

For every outcome branch the measured qubits are discarded, the residual
state is reduced to a graph by single-qubit Cliffords, and that graph must be
LC-equivalent to what the rewrite rules predict.

Sequences can be simulated in two frames. In the ``"graph"`` frame (the
default) the residual state is rotated back onto the predicted graph state by
an explicitly constructed local Clifford before the next Pauli is measured,
which is how the rewrite rules compose. In the ``"raw"`` frame every Pauli is
measured on the uncorrected state. The two frames can disagree: an X rewrite
leaves a correction on its special neighbor that exchanges X and Z there.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from qlantopo.errors import SizeLimitError
from qlantopo.graph import Graph, Vertex, local_complement
from qlantopo.measurement import MeasurementSpec, PauliBasis, measure, measure_sequence
from qlantopo.oracle.lc import lc_equivalent, lc_orbit_size, lc_path
from qlantopo.oracle.pauli import PauliString
from qlantopo.oracle.tableau import (
    _INVERSE,
    StabilizerTableau,
    apply_record,
    discard_qubit,
    extract_graph,
    measure_pauli,
    tableau_from_graph,
)
from qlantopo.serialize import graph_to_json

CERTIFY_QUBIT_LIMIT = 8


@dataclass(frozen=True)
class BranchResult:
    outcomes: tuple[int, ...]
    probability: Fraction
    extracted: Graph
    lc_equivalent: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "outcomes": ["+" if o > 0 else "-" for o in self.outcomes],
            "probability": str(self.probability),
            "extracted": graph_to_json(self.extracted),
            "lc_equivalent": self.lc_equivalent,
        }


@dataclass(frozen=True)
class Certificate:
    graph: Graph
    specs: tuple[MeasurementSpec, ...]
    predicted: Graph
    branches: tuple[BranchResult, ...] = field(default_factory=tuple)
    orbit_size: int | None = None

    @property
    def lc_equivalent(self) -> bool:
        return all(b.lc_equivalent for b in self.branches)

    def __bool__(self) -> bool:
        return self.lc_equivalent

    def to_json(self) -> dict[str, Any]:
        return {
            "graph": graph_to_json(self.graph),
            "spec": [s.to_json() for s in self.specs],
            "predicted": graph_to_json(self.predicted),
            "branches": [b.to_json() for b in self.branches],
            "lc_equivalent": self.lc_equivalent,
            "orbit_size": self.orbit_size,
        }


# local Cliffords realizing tau_v: a square root of X on v, square roots of Z on its neighbors
_TAU_GATES = [
    (("H", "S", "H"), ("SDG",)),
    (("H", "SDG", "H"), ("S",)),
    (("H", "S", "H"), ("S",)),
    (("H", "SDG", "H"), ("SDG",)),
]


def _graph_generators(t: StabilizerTableau, g: Graph) -> list[PauliString]:
    index = {v: k for k, v in enumerate(t.vertices)}
    gens = []
    for v in t.vertices:
        z = 0
        for u in g.neighbors(v):
            z |= 1 << index[u]
        gens.append(PauliString(t.n, 1 << index[v], z, 0))
    return gens


def _extend(record: dict[Vertex, list[str]], v: Vertex, gates: tuple[str, ...]) -> None:
    record.setdefault(v, []).extend(gates)


def local_correction(t: StabilizerTableau, target: Graph) -> dict[Vertex, tuple[str, ...]] | None:
    """Single-qubit gates taking the state ``t`` exactly to ``|target>``.

    Returns None when no local Clifford does so. The gates for each vertex
    are listed in application order.
    """
    ex = extract_graph(t)
    path = lc_path(ex.graph, target)
    if path is None:
        return None
    record: dict[Vertex, list[str]] = {}
    for v, gates in ex.record.items():
        _extend(record, v, tuple(_INVERSE[name] for name in reversed(gates)))
    cur_graph = ex.graph
    cur = apply_record(t, record)
    for v in path:
        nxt_graph = local_complement(cur_graph, v)
        wanted = _graph_generators(cur, nxt_graph)
        for on_v, on_nbrs in _TAU_GATES:
            step = {v: on_v, **{u: on_nbrs for u in cur_graph.neighbors(v)}}
            trial = apply_record(cur, step)
            if all(trial.stabilizes(p) != 0 for p in wanted):
                break
        else:
            raise AssertionError(f"no local Clifford realizes tau at {v!r}")
        for u, gates in step.items():
            _extend(record, u, gates)
        cur, cur_graph = trial, nxt_graph
    # the stabilizer group now matches |target> up to generator signs
    for v, p in zip(cur.vertices, _graph_generators(cur, target)):
        if cur.stabilizes(p) == -1:
            _extend(record, v, ("Z",))
    out = {v: tuple(gs) for v, gs in record.items()}
    assert apply_record(t, out).same_state(tableau_from_graph(target))
    return out


def _branches(
    g: Graph, specs: Sequence[MeasurementSpec], frame: str
) -> list[tuple[tuple[int, ...], Fraction, StabilizerTableau]]:
    live = [((), Fraction(1), tableau_from_graph(g))]
    for step, spec in enumerate(specs):
        g, _ = measure(g, spec)
        correct = frame == "graph" and step < len(specs) - 1
        nxt = []
        for outcomes, prob, tab in live:
            for b in measure_pauli(tab, spec.vertex, spec.basis.value):
                residual = discard_qubit(b.tableau, spec.vertex)
                if correct:
                    fix = local_correction(residual, g)
                    if fix is None:
                        # keep the uncorrected state; the final comparison reports the failure
                        nxt.append(((*outcomes, b.outcome), prob * b.probability, residual))
                        continue
                    residual = apply_record(residual, fix)
                nxt.append(((*outcomes, b.outcome), prob * b.probability, residual))
        live = nxt
    return live


def certify_sequence(
    g: Graph,
    specs: Sequence[MeasurementSpec],
    *,
    with_orbit: bool = False,
    frame: str = "graph",
    limit: int = CERTIFY_QUBIT_LIMIT,
) -> Certificate:
    """Simulate ``specs`` on ``|g>`` over every outcome combination.

    Each residual state must reduce to a graph LC-equivalent to the rewrite
    engine's output for the same sequence. ``frame`` is ``"graph"`` or
    ``"raw"``; see the module docstring.
    """
    if frame not in ("graph", "raw"):
        raise ValueError(f"unknown frame {frame!r}")
    if len(g) > limit:
        raise SizeLimitError(f"graph has {len(g)} vertices, certification limit is {limit}")
    specs = tuple(specs)
    predicted, _ = measure_sequence(g, specs)
    results = []
    for outcomes, prob, tab in _branches(g, specs, frame):
        extracted = extract_graph(tab).graph
        results.append(BranchResult(outcomes, prob, extracted, lc_equivalent(extracted, predicted)))
    orbit = lc_orbit_size(predicted) if with_orbit else None
    return Certificate(g, specs, predicted, tuple(results), orbit)


def certify_measurement(g: Graph, spec: MeasurementSpec, *, with_orbit: bool = False) -> Certificate:
    """Single-measurement case of :func:`certify_sequence`; truthy iff every branch agrees."""
    return certify_sequence(g, (spec,), with_orbit=with_orbit)


def k0_choices_agree(g: Graph, vertex: Any) -> bool:
    """Whether X-measuring ``vertex`` gives LC-equivalent graphs for every valid ``k0``.

    LC equivalence is transitive, so each choice is compared with the first.
    """
    nbrs = sorted(g.neighbors(vertex))
    if not nbrs:
        return True
    outs = [measure(g, MeasurementSpec(vertex, PauliBasis.X, k0))[0] for k0 in nbrs]
    return all(lc_equivalent(outs[0], o) for o in outs[1:])
