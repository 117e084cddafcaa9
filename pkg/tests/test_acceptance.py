"""Acceptance suite: one test per criterion, each with its tolerance and time limit.

Every test records a ``PASS``/``FAIL`` line in :data:`RESULTS`; the conftest
prints them together at the end of the run. ``python tests/test_acceptance.py``
runs only this file.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from time import perf_counter
from typing import Any

import numpy as np

from golden import FIXTURES, run_workflow
from graphgen import all_graphs
from qlantopo.graph import (
    Graph,
    Topology,
    complement,
    delete_vertex,
    is_two_colorable,
    local_complement,
    make_topology,
)
from qlantopo.measurement import MeasurementSpec, PauliBasis
from qlantopo.network import binary_star_labels, build_network, merge_remote_cz, recolored_parts
from qlantopo.oracle import (
    apply_pauli,
    certify_measurement,
    certify_sequence,
    k0_choices_agree,
    lc_equivalent,
    statevector_from_graph,
    tableau_from_graph,
)
from qlantopo.recipes import RecipeKind, RecipeParams, Side, apply, base_graph, required_params

RESULTS: dict[int, str] = {}
SEED = 20240611


@contextmanager
def criterion(number: int, title: str, limit: float | None) -> Iterator[dict[str, Any]]:
    """Time the body, record a verdict line, then fail if the time limit was missed."""
    detail: dict[str, Any] = {}
    ok = False
    start = perf_counter()
    try:
        yield detail
        ok = True
    finally:
        elapsed = perf_counter() - start
        within = limit is None or elapsed < limit
        budget = "" if limit is None else f" < {limit:g} s"
        facts = ", ".join(f"{k}={v}" for k, v in detail.items())
        status = "PASS" if ok and within else "FAIL"
        RESULTS[number] = f"{status} criterion {number}: {title} [{elapsed:.2f} s{budget}] {facts}".rstrip()
    assert within, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"


def merged(n1: int, n2: int):
    return merge_remote_cz(build_network(n1, n2))


def recipe_cases(n1: int, n2: int) -> Iterator[tuple[RecipeKind, RecipeParams]]:
    for kind in RecipeKind:
        need = required_params(kind)
        for side in Side:
            src, dst = (n1, n2) if side is Side.RIGHT else (n2, n1)
            for j in range(1, src) if "client_j" in need else [None]:
                for i in range(1, dst) if "client_i" in need else [None]:
                    yield kind, RecipeParams(side, j, i)


def random_graph(rng: random.Random, n: int) -> Graph:
    p = rng.random()
    return Graph(range(1, n + 1), [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p])


def test_criterion_1_merge():
    with criterion(1, "remote CZ merge yields the binary star", 1.0) as d:
        count = 0
        for n1, n2 in itertools.product(range(1, 7), repeat=2):
            net = merged(n1, n2)
            part1, part2 = binary_star_labels(net)
            # the part holding QLAN 2's hub has n1 vertices, so it is passed first
            assert net.shared_graph == make_topology(Topology.BINARY_STAR, n1, n2, labels=(part2, part1))
            parts = recolored_parts(net)
            assert parts.part1 == frozenset(part1) and parts.part2 == frozenset(part2)
            assert parts.validate(net.shared_graph)
            assert net.ledger.epr_consumed_inter == 1
            count += 1
        d["networks"] = count


def test_criterion_2_recipe_grid():
    with criterion(2, "every recipe matches its closed form", 10.0) as d:
        count = 0
        for n1, n2 in itertools.product(range(2, 7), repeat=2):
            net = merged(n1, n2)
            for kind, params in recipe_cases(n1, n2):
                report = apply(net, kind, params)
                assert report.matched, (n1, n2, kind, params)
                assert report.result == report.expected
                count += 1
        d["cases"] = count


def test_criterion_3_measurement_rules():
    with criterion(3, "single-measurement rules agree with the stabilizer simulator", 120.0) as d:
        graphs = cases = 0
        for n in range(1, 6):
            for g in all_graphs(n):
                graphs += 1
                for v in g.sorted_vertices():
                    for basis in PauliBasis:
                        assert certify_measurement(g, MeasurementSpec(v, basis)), (g, v, basis)
                        cases += 1
        assert graphs == 1 + 2 + 8 + 64 + 1024
        d["graphs"], d["cases"] = graphs, cases


def test_criterion_4_recipe_oracle():
    with criterion(4, "recipe sequences agree with the stabilizer simulator", 60.0) as d:
        cases = most = 0
        for n in (3, 4):
            net = merged(n, n)
            for kind, params in recipe_cases(n, n):
                report = apply(net, kind, params)
                cert = certify_sequence(base_graph(net, kind, params), report.plan)
                assert cert.predicted == report.result
                assert len(cert.branches) <= 2**4
                assert cert, (n, kind, params)
                most = max(most, len(cert.branches))
                cases += 1
        d["cases"], d["max_branches"] = cases, most


def test_criterion_5_k0_independence():
    with criterion(5, "X output does not depend on k0 up to LC", 30.0) as d:
        checked = 0
        for n in range(2, 7):
            for g in all_graphs(n):
                for v in g.sorted_vertices():
                    if g.degree(v) > 1:
                        assert k0_choices_agree(g, v), (g, v)
                        checked += 1
        d["vertices_with_choice"] = checked


def _algebraic_cases(rng: random.Random) -> Iterator[tuple[Graph, Any]]:
    for n in range(1, 5):
        for g in all_graphs(n):
            yield g, rng.choice(g.sorted_vertices())
    for _ in range(1000):
        g = random_graph(rng, rng.randint(1, 12))
        yield g, rng.choice(g.sorted_vertices())


def _family(rng: random.Random) -> Graph:
    kind = rng.choice(list(Topology))
    if kind is Topology.COMPLETE:
        kind = Topology.PATH
    if kind in (Topology.BINARY_STAR, Topology.COMPLETE_BIPARTITE):
        return make_topology(kind, rng.randint(1, 8), rng.randint(1, 8))
    if kind is Topology.EVEN_CYCLE:
        return make_topology(kind, 2 * rng.randint(2, 8))
    if kind is Topology.HYPERCUBE:
        return make_topology(kind, rng.randint(1, 5))
    if kind is Topology.TREE:
        n = rng.randint(2, 16)
        return make_topology(kind, parents=[None, *(rng.randrange(k) for k in range(1, n))])
    return make_topology(kind, rng.randint(2, 16))


def test_criterion_6_algebraic_properties():
    with criterion(6, "algebraic properties of the rewrite engine", 10.0) as d:
        rng = random.Random(SEED)
        graphs = 0
        for g, v in _algebraic_cases(rng):
            assert local_complement(local_complement(g, v), v) == g
            assert complement(complement(g)) == g
            for u in g.sorted_vertices():
                if g.degree(u) <= 1:
                    assert local_complement(g, u) == g
            assert delete_vertex(g, v).number_of_edges() == g.number_of_edges() - g.degree(v)
            graphs += 1

        nets = 0
        sizes = list(itertools.product(range(2, 5), repeat=2))
        sizes += [(rng.randint(2, 16), rng.randint(2, 16)) for _ in range(1000)]
        for n1, n2 in sizes:
            net = merged(n1, n2)
            side = Side.RIGHT if nets % 2 == 0 else Side.LEFT
            dst = n2 if side is Side.RIGHT else n1
            hier = apply(net, RecipeKind.HIERARCHICAL_PEER_TO_PEER, RecipeParams(side)).result
            assert hier.number_of_edges() == dst * (dst - 1) // 2
            extranet = apply(net, RecipeKind.EXTRANET, RecipeParams(side)).result
            witness = is_two_colorable(extranet)
            assert witness is not None and witness.validate(extranet)
            assert {witness.part1, witness.part2} == {
                frozenset(net.qlan1.client_vertices),
                frozenset(net.qlan2.client_vertices),
            }
            nets += 1

        families = 0
        small = [make_topology(Topology.PATH, n) for n in range(2, 5)]
        small += [make_topology(Topology.STAR, n) for n in range(2, 5)]
        small += [make_topology(Topology.EVEN_CYCLE, 4), make_topology(Topology.HYPERCUBE, 2)]
        small += [make_topology(k, a, b) for k in (Topology.BINARY_STAR, Topology.COMPLETE_BIPARTITE)
                  for a, b in itertools.product(range(1, 4), repeat=2) if a + b <= 4]
        for g in small + [_family(rng) for _ in range(1000)]:
            witness = is_two_colorable(g)
            assert witness is not None and witness.validate(g), g
            families += 1
        d["graphs"], d["networks"], d["families"] = graphs, nets, families


_CZ_SIGNS = {0: 1.0, 1: 1.0, 2: 1.0, 3: -1.0}


def _explicit_graph_state(g: Graph) -> np.ndarray:
    """|+>^n followed by one diagonal CZ per edge, built with dense Kronecker products."""
    vs = g.sorted_vertices()
    n = len(vs)
    psi = np.ones(1)
    for _ in vs:
        psi = np.kron(psi, np.array([1.0, 1.0]) / np.sqrt(2))
    for u, v in g.sorted_edges():
        a, b = vs.index(u), vs.index(v)
        diag = np.array([_CZ_SIGNS[(k >> (n - 1 - a) & 1) * 2 + (k >> (n - 1 - b) & 1)] for k in range(2**n)])
        psi = diag * psi
    return psi


def test_criterion_7_tableau_statevector():
    with criterion(7, "graph-state generators stabilize the statevector", None) as d:
        rng = random.Random(SEED)
        worst = 0.0
        for _ in range(200):
            g = random_graph(rng, rng.randint(1, 10))
            psi = statevector_from_graph(g)
            for gen in tableau_from_graph(g).generators:
                worst = max(worst, float(np.linalg.norm(apply_pauli(gen, psi) - psi)))
        assert worst < 1e-9
        amp = 0.0
        for n in range(1, 4):
            for g in all_graphs(n):
                amp = max(amp, float(np.max(np.abs(statevector_from_graph(g) - _explicit_graph_state(g)))))
        assert amp < 1e-12
        d["max_residual"], d["max_amplitude_error"] = f"{worst:.1e}", f"{amp:.1e}"


def test_criterion_8_extranet_vs_double_role_delegation():
    with criterion(8, "extranet and double role delegation are LC-equivalent", 5.0) as d:
        net = merged(3, 3)
        extranet = apply(net, RecipeKind.EXTRANET).result
        pairs = 0
        for side in Side:
            for j, i in itertools.product((1, 2), repeat=2):
                double = apply(net, RecipeKind.DOUBLE_ROLE_DELEGATION, RecipeParams(side, j, i)).result
                assert lc_equivalent(extranet, double), (side, j, i)
                pairs += 1
        d["pairs"] = pairs


def test_criterion_9_cli_golden_workflow():
    with criterion(9, "CLI workflow output is byte-identical to the fixtures", None) as d:
        produced = run_workflow()
        for name, text in produced.items():
            assert text.encode() == (FIXTURES / name).read_bytes(), name
        d["files"] = len(produced)


if __name__ == "__main__":
    import sys

    import pytest

    code = pytest.main([str(Path(__file__)), "-q"])
    sys.exit(code)
