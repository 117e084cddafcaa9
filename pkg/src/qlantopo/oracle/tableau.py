"""Stabilizer-state simulation used as an independent check of the rewrite engine.

The state is kept as ``n`` commuting, independent generators, one qubit per
graph vertex. Measurements follow the usual Gottesman-Knill update and keep
both outcome branches; no randomness is involved.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from qlantopo.errors import NotFactorizedError, SizeLimitError, UnmappedQubitError
from qlantopo.graph import Graph, Vertex
from qlantopo.oracle.pauli import PauliString

ORACLE_QUBIT_LIMIT = 16

GATES = ("H", "S", "SDG", "X", "Y", "Z")
_INVERSE = {"H": "H", "S": "SDG", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z"}


def conjugate(p: PauliString, qubit: int, gate: str) -> PauliString:
    """``U p U^dagger`` for a single-qubit Clifford ``U`` named by ``gate``."""
    bit = 1 << qubit
    xb, zb = bool(p.x & bit), bool(p.z & bit)
    x, z, r = p.x, p.z, p.r
    if gate == "H":
        x = (x & ~bit) | (bit if zb else 0)
        z = (z & ~bit) | (bit if xb else 0)
        r += 2 if xb and zb else 0
    elif gate in ("S", "SDG"):
        if xb:
            z ^= bit
            r += 1 if gate == "S" else 3
    elif gate == "X":
        r += 2 if zb else 0
    elif gate == "Z":
        r += 2 if xb else 0
    elif gate == "Y":
        r += 2 if xb != zb else 0
    else:
        raise ValueError(f"unknown gate {gate!r}")
    return PauliString(p.n, x, z, r)


def _decompose(gens: Sequence[PauliString], x: int, z: int) -> list[int] | None:
    """Indices of generators whose product has bit pattern ``(x, z)``, or None."""
    n = gens[0].n if gens else 0
    basis: dict[int, tuple[int, int]] = {}
    for k, g in enumerate(gens):
        vec, combo = g.x | (g.z << n), 1 << k
        while vec:
            top = vec.bit_length() - 1
            if top not in basis:
                basis[top] = (vec, combo)
                break
            bvec, bcombo = basis[top]
            vec ^= bvec
            combo ^= bcombo
    target, combo = x | (z << n), 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        bvec, bcombo = basis[top]
        target ^= bvec
        combo ^= bcombo
    return [k for k in range(len(gens)) if combo >> k & 1]


def _product(gens: Sequence[PauliString], indices: Iterable[int], n: int) -> PauliString:
    out = PauliString(n, 0, 0, 0)
    for k in indices:
        out = out * gens[k]
    return out


@dataclass(frozen=True)
class StabilizerTableau:
    """Generator set of an ``n``-qubit stabilizer state.

    ``vertices[k]`` is the graph vertex carried by qubit ``k``.
    """

    vertices: tuple[Vertex, ...]
    generators: tuple[PauliString, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def qubit(self, v: Vertex) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UnmappedQubitError(f"vertex {v!r} is not mapped to a qubit") from None

    def is_valid(self) -> bool:
        """Hermitian, pairwise commuting, independent generators, as many as qubits."""
        gens = self.generators
        if len(gens) != self.n or any(g.n != self.n for g in gens):
            return False
        if not all(g.is_hermitian() for g in gens):
            return False
        if not all(a.commutes(b) for k, a in enumerate(gens) for b in gens[k + 1:]):
            return False
        return _rank(gens) == self.n

    def stabilizes(self, p: PauliString) -> int:
        """+1 or -1 if ``+p`` or ``-p`` is in the group, 0 otherwise."""
        idx = _decompose(self.generators, p.x, p.z)
        if idx is None:
            return 0
        prod = _product(self.generators, idx, self.n)
        return 1 if prod.r == p.r else -1 if (prod.r - p.r) % 4 == 2 else 0

    def canonical(self) -> tuple[tuple[int, int, int], ...]:
        """Reduced echelon generators; equal iff two tableaus describe the same state."""
        n = self.n
        rows = list(self.generators)
        key = [g.x | (g.z << n) for g in rows]
        for k in range(len(rows)):
            # move the row with the highest leading bit among the rest to position k
            best = max(range(k, len(rows)), key=lambda m: key[m], default=None)
            if best is None or key[best] == 0:
                break
            rows[k], rows[best] = rows[best], rows[k]
            key[k], key[best] = key[best], key[k]
            top = key[k].bit_length() - 1
            for m in range(len(rows)):
                if m != k and key[m] >> top & 1:
                    rows[m] = rows[m] * rows[k]
                    key[m] ^= key[k]
        return tuple(sorted(((g.r, g.x, g.z) for g in rows), key=lambda t: -(t[1] | (t[2] << n))))

    def same_state(self, other: StabilizerTableau) -> bool:
        return self.vertices == other.vertices and self.canonical() == other.canonical()

    def labels(self) -> list[str]:
        return [g.to_label() for g in self.generators]


def _rank(gens: Sequence[PauliString]) -> int:
    n = gens[0].n if gens else 0
    basis: dict[int, int] = {}
    for g in gens:
        vec = g.x | (g.z << n)
        while vec:
            top = vec.bit_length() - 1
            if top not in basis:
                basis[top] = vec
                break
            vec ^= basis[top]
    return len(basis)


def tableau_from_graph(g: Graph, limit: int = ORACLE_QUBIT_LIMIT) -> StabilizerTableau:
    """Generators ``X_v prod_{u in N(v)} Z_u`` of the graph state ``|g>``."""
    if len(g) > limit:
        raise SizeLimitError(f"graph has {len(g)} vertices, oracle limit is {limit}")
    vertices = tuple(g.sorted_vertices())
    index = {v: k for k, v in enumerate(vertices)}
    n = len(vertices)
    gens = []
    for v in vertices:
        z = 0
        for u in g.neighbors(v):
            z |= 1 << index[u]
        gens.append(PauliString(n, 1 << index[v], z, 0))
    return StabilizerTableau(vertices, tuple(gens))


def apply_gate(t: StabilizerTableau, v: Vertex, gate: str) -> StabilizerTableau:
    q = t.qubit(v)
    return StabilizerTableau(t.vertices, tuple(conjugate(g, q, gate) for g in t.generators))


def apply_record(t: StabilizerTableau, record: Mapping[Vertex, Sequence[str]]) -> StabilizerTableau:
    for v, gates in record.items():
        for gate in gates:
            t = apply_gate(t, v, gate)
    return t


@dataclass(frozen=True)
class OutcomeBranch:
    outcome: int  # +1 or -1
    probability: Fraction
    tableau: StabilizerTableau


def measure_pauli(t: StabilizerTableau, v: Vertex, basis: str) -> list[OutcomeBranch]:
    """Projective measurement of ``basis`` in ``{"X", "Y", "Z"}`` on the qubit of ``v``.

    Returns one branch with probability 1 when the outcome is determined,
    otherwise the ``+1`` and ``-1`` branches with probability 1/2 each.
    """
    q = t.qubit(v)
    basis = getattr(basis, "value", basis)
    p = PauliString.single(t.n, q, basis)
    gens = list(t.generators)
    anti = [k for k, g in enumerate(gens) if not g.commutes(p)]
    if not anti:
        sign = t.stabilizes(p)
        assert sign != 0, "a commuting single-qubit Pauli must be in the group"
        return [OutcomeBranch(sign, Fraction(1), t)]
    pivot, rest = anti[0], anti[1:]
    for k in rest:
        gens[k] = gens[k] * gens[pivot]
    branches = []
    for sign, op in ((1, p), (-1, -p)):
        new = list(gens)
        new[pivot] = op
        branches.append(OutcomeBranch(sign, Fraction(1, 2), StabilizerTableau(t.vertices, tuple(new))))
    return branches


def _drop_bit(mask: int, q: int) -> int:
    low = (1 << q) - 1
    return (mask & low) | ((mask >> 1) & ~low)


def discard_qubit(t: StabilizerTableau, v: Vertex) -> StabilizerTableau:
    """Remove a qubit that is in a product state with the rest of the register."""
    q = t.qubit(v)
    gens = list(t.generators)
    for letter in "XZY":
        p = PauliString.single(t.n, q, letter)
        idx = _decompose(gens, p.x, p.z)
        if idx:
            break
    else:
        raise NotFactorizedError(f"qubit {v!r} is entangled with the rest of the state")
    local = _product(gens, idx, t.n)
    home = idx[0]
    gens[home] = local
    bit = 1 << q
    for k, g in enumerate(gens):
        if k != home and g.support & bit:
            gens[k] = g * local
    kept = [PauliString(t.n - 1, _drop_bit(g.x, q), _drop_bit(g.z, q), g.r) for k, g in enumerate(gens) if k != home]
    return StabilizerTableau(t.vertices[:q] + t.vertices[q + 1:], tuple(kept))


@dataclass(frozen=True)
class Extraction:
    """Graph found inside a stabilizer state.

    ``record[v]`` lists the single-qubit gates that, applied in order to the
    qubit of ``v`` in ``|graph>``, reproduce the original state.
    """

    graph: Graph
    record: dict[Vertex, tuple[str, ...]]


def extract_graph(t: StabilizerTableau) -> Extraction:
    """Reduce a stabilizer state to a graph state by single-qubit Cliffords.

    Hadamards on the non-pivot columns of the X block make it invertible;
    row reduction then brings the generators to ``X_k Z^{Gamma_k}``, phase
    gates clear the diagonal of ``Gamma`` and Z gates fix the signs.
    """
    n = t.n
    gens = list(t.generators)
    applied: list[tuple[int, str]] = []

    def gate(q: int, name: str) -> None:
        for k in range(n):
            gens[k] = conjugate(gens[k], q, name)
        applied.append((q, name))

    def reduce_x() -> list[int]:
        rank, pivots = 0, []
        for c in range(n):
            bit = 1 << c
            hit = next((m for m in range(rank, n) if gens[m].x & bit), None)
            if hit is None:
                continue
            gens[rank], gens[hit] = gens[hit], gens[rank]
            for m in range(n):
                if m != rank and gens[m].x & bit:
                    gens[m] = gens[m] * gens[rank]
            pivots.append(c)
            rank += 1
        return pivots

    pivots = reduce_x()
    for c in sorted(set(range(n)) - set(pivots)):
        gate(c, "H")
    if len(reduce_x()) != n:
        raise AssertionError("X block still singular after Hadamards; tableau was invalid")
    for k in range(n):
        if gens[k].z >> k & 1:
            gate(k, "SDG")
    for k in range(n):
        if gens[k].r == 2:
            gate(k, "Z")
        elif gens[k].r != 0:
            raise AssertionError("non-Hermitian generator")
    edges = [(t.vertices[k], t.vertices[m]) for k in range(n) for m in range(k + 1, n) if gens[k].z >> m & 1]
    for k in range(n):
        for m in range(n):
            if (gens[k].z >> m & 1) != (gens[m].z >> k & 1):
                raise AssertionError("adjacency matrix is not symmetric; tableau was invalid")
    graph = Graph(t.vertices, edges)
    record: dict[Vertex, list[str]] = {}
    for q, name in reversed(applied):
        record.setdefault(t.vertices[q], []).append(_INVERSE[name])
    return Extraction(graph, {v: tuple(gs) for v, gs in record.items()})
