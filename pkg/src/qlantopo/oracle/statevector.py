"""Dense amplitude vectors for graph states, used to check the tableau engine.

Qubit ``k`` (the ``k``-th vertex in sorted order) is axis ``k`` of the
``(2,) * n`` amplitude tensor; the flat vector is its C-order ravel.
"""

from __future__ import annotations

import numpy as np

from qlantopo.errors import SizeLimitError
from qlantopo.graph import Graph
from qlantopo.oracle.pauli import PauliString

STATEVECTOR_QUBIT_LIMIT = 12


def statevector_from_graph(g: Graph, limit: int = STATEVECTOR_QUBIT_LIMIT) -> np.ndarray:
    """Amplitudes of ``prod_{(u,v) in E} CZ_uv |+>^n``.

    Every basis state gets amplitude ``2**(-n/2) * (-1)**e(b)``, where
    ``e(b)`` counts edges with both endpoints set in ``b``.
    """
    n = len(g)
    if n > limit:
        raise SizeLimitError(f"graph has {n} vertices, statevector limit is {limit}")
    index = {v: k for k, v in enumerate(g.sorted_vertices())}
    bits = np.indices((2,) * n).reshape(n, -1) if n else np.zeros((0, 1), dtype=int)
    parity = np.zeros(bits.shape[1], dtype=np.int64)
    for u, v in g.edges:
        parity ^= bits[index[u]] & bits[index[v]]
    return (1 - 2 * parity).astype(complex) / np.sqrt(2.0**n)


def apply_pauli(p: PauliString, psi: np.ndarray) -> np.ndarray:
    """``p |psi>`` for ``p = i**r X^x Z^z``; the Z part acts first."""
    n = p.n
    out = np.array(psi, dtype=complex).reshape((2,) * n) if n else np.array(psi, dtype=complex)
    for k in range(n):
        if p.z >> k & 1:
            idx = [slice(None)] * n
            idx[k] = 1
            out[tuple(idx)] *= -1
    for k in range(n):
        if p.x >> k & 1:
            out = np.flip(out, axis=k)
    return p.phase * out.reshape(-1)
