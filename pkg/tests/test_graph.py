from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphgen import all_graphs, brute_force_two_colorable, graphs, graphs_with_vertex
from qlantopo.errors import InvalidSizeError, SimpleGraphError, UnknownVertexError
from qlantopo.graph import (
    Bipartition,
    Graph,
    QlanLabel,
    Role,
    Topology,
    complement,
    delete_vertex,
    graph_equal,
    induced_subgraph,
    is_two_colorable,
    local_complement,
    make_topology,
    neighborhood,
)


def path3() -> Graph:
    return Graph([1, 2, 3], [(1, 2), (2, 3)])


def k3() -> Graph:
    return Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])


def star(center: str, leaves: str) -> Graph:
    return Graph([center, *leaves], [(center, v) for v in leaves])


class TestConstruction:
    def test_self_loop_rejected(self):
        with pytest.raises(SimpleGraphError):
            Graph([1], [(1, 1)])

    def test_edge_endpoint_must_be_a_vertex(self):
        with pytest.raises(UnknownVertexError):
            Graph([1], [(1, 2)])

    def test_duplicate_edges_collapse(self):
        g = Graph([1, 2], [(1, 2), (2, 1), (1, 2)])
        assert g.number_of_edges() == 1
        assert g.sorted_edges() == [(1, 2)]

    def test_from_edges_adds_endpoints(self):
        g = Graph.from_edges([(3, 1)], vertices=[7])
        assert g.vertices == {1, 3, 7}
        assert g.edges == {(1, 3)}

    def test_edges_are_canonically_ordered(self):
        a, b = QlanLabel(2, Role.SUPER, 1), QlanLabel(1, Role.CLIENT, 4)
        g = Graph([a, b], [(a, b)])
        assert g.sorted_edges() == [(b, a)]

    def test_equality_and_hash_follow_labels(self):
        g1 = Graph([1, 2, 3], [(1, 2), (2, 3)])
        g2 = Graph([3, 2, 1], [(3, 2), (2, 1)])
        assert g1 == g2 and hash(g1) == hash(g2)
        assert g1 != Graph([1, 2, 3], [(1, 2), (1, 3)])

    def test_label_round_trip(self):
        label = QlanLabel(2, Role.CLIENT, 3)
        assert str(label) == "2_client_3"
        assert QlanLabel.parse("2_client_3") == label
        with pytest.raises(ValueError):
            QlanLabel.parse("2-client-3")
        with pytest.raises(ValueError):
            QlanLabel(1, Role.CLIENT, 0)

    def test_super_nodes_sort_before_clients(self):
        labels = [QlanLabel(1, Role.CLIENT, 1), QlanLabel(2, Role.SUPER, 1), QlanLabel(1, Role.SUPER, 1)]
        assert [str(v) for v in sorted(labels)] == ["1_super_1", "1_client_1", "2_super_1"]


class TestNeighborhood:
    def test_star_center(self):
        assert neighborhood(star("c", "abd"), "c") == {"a", "b", "d"}

    def test_path_middle(self):
        assert neighborhood(path3(), 2) == {1, 3}

    def test_isolated(self):
        assert neighborhood(Graph(["v"]), "v") == frozenset()

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            neighborhood(path3(), 9)


class TestInducedSubgraph:
    def test_keeps_inner_edge(self):
        assert induced_subgraph(k3(), {1, 2}) == Graph([1, 2], [(1, 2)])

    def test_star_leaves_are_independent(self):
        assert induced_subgraph(star("c", "abd"), "abd") == Graph("abd")

    def test_full_set_is_identity(self):
        assert induced_subgraph(path3(), {1, 2, 3}) == path3()

    def test_outside_vertex(self):
        with pytest.raises(UnknownVertexError):
            induced_subgraph(path3(), {1, 4})


class TestComplement:
    def test_empty_to_complete(self):
        assert complement(Graph([1, 2, 3])) == k3()

    def test_complete_to_empty(self):
        assert complement(k3()) == Graph([1, 2, 3])

    def test_path(self):
        assert complement(path3()) == Graph([1, 2, 3], [(1, 3)])


class TestLocalComplement:
    def test_path_middle_closes_triangle(self):
        assert local_complement(path3(), 2) == k3()

    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_star_center_gives_complete_graph(self, n):
        s = make_topology(Topology.STAR, n, labels=list(range(1, n + 1)))
        assert local_complement(s, 1) == make_topology(Topology.COMPLETE, n)

    def test_low_degree_is_identity(self):
        g = path3()
        assert local_complement(g, 1) is g
        assert local_complement(Graph([5]), 5) == Graph([5])

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            local_complement(path3(), 0)


class TestDeleteVertex:
    def test_triangle(self):
        assert delete_vertex(k3(), 3) == Graph([1, 2], [(1, 2)])

    def test_isolated(self):
        g = Graph([1, 2, 3], [(1, 2)])
        assert delete_vertex(g, 3).edges == g.edges

    def test_binary_star_minus_far_part_is_a_star(self):
        # drop every vertex of part 2 except its hub: what remains is a star on part 1 plus that hub
        bs = make_topology(Topology.BINARY_STAR, 3, 3)
        for v in [(2, 2), (2, 3)]:
            bs = delete_vertex(bs, v)
        assert bs == Graph([(1, 1), (1, 2), (1, 3), (2, 1)], [((1, 1), (2, 1)), ((1, 2), (2, 1)), ((1, 3), (2, 1))])

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            delete_vertex(path3(), 4)


class TestGraphEqual:
    def test_reflexive(self):
        assert graph_equal(path3(), path3())

    def test_path_vs_triangle(self):
        assert not graph_equal(path3(), k3())

    def test_insertion_order(self):
        assert graph_equal(Graph([1, 2, 3], [(2, 3), (1, 2)]), Graph([3, 1, 2], [(1, 2), (3, 2)]))

    def test_same_shape_different_labels(self):
        assert not graph_equal(Graph([1, 2], [(1, 2)]), Graph([1, 3], [(1, 3)]))


class TestTwoColorable:
    def test_binary_star_parts(self):
        bs = make_topology(Topology.BINARY_STAR, 3, 3)
        witness = is_two_colorable(bs)
        assert witness == Bipartition(frozenset({(1, 1), (1, 2), (1, 3)}), frozenset({(2, 1), (2, 2), (2, 3)}))
        assert witness.validate(bs)

    def test_triangle(self):
        assert is_two_colorable(k3()) is None

    def test_hypercube(self):
        q3 = make_topology(Topology.HYPERCUBE, 3)
        witness = is_two_colorable(q3)
        assert witness is not None and witness.validate(q3)
        assert witness.part1 == {v for v in range(8) if bin(v).count("1") % 2 == 0}

    def test_smallest_vertex_in_part1(self):
        g = Graph([5, 2, 9, 7], [(5, 9), (2, 7)])
        assert 2 in is_two_colorable(g).part1

    def test_edgeless_graph_gets_two_parts(self):
        witness = is_two_colorable(Graph([1, 2, 3]))
        assert witness.part1 == {1, 2} and witness.part2 == {3}

    def test_fewer_than_two_vertices(self):
        assert is_two_colorable(Graph()) is None
        assert is_two_colorable(Graph([1])) is None

    @pytest.mark.parametrize("n", range(0, 6))
    def test_matches_brute_force_exhaustively(self, n):
        for g in all_graphs(n):
            witness = is_two_colorable(g)
            assert (witness is not None) == brute_force_two_colorable(g)
            if witness is not None:
                assert witness.validate(g)

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=12))
    def test_matches_brute_force_random(self, g):
        witness = is_two_colorable(g)
        assert (witness is not None) == brute_force_two_colorable(g)
        if witness is not None:
            assert witness.validate(g)
            assert min(g.vertices) in witness.part1


class TestMakeTopology:
    def test_star(self):
        assert make_topology(Topology.STAR, 4, labels="cabd") == star("c", "abd")

    def test_binary_star_edges(self):
        bs = make_topology(Topology.BINARY_STAR, 3, 3)
        v1 = [(1, 1), (1, 2), (1, 3)]
        v2 = [(2, 1), (2, 2), (2, 3)]
        expected = {(v1[0], v2[0]), (v1[0], v2[1]), (v1[0], v2[2]), (v1[1], v2[0]), (v1[2], v2[0])}
        assert bs.edges == expected

    def test_complete_bipartite(self):
        g = make_topology(Topology.COMPLETE_BIPARTITE, 2, 3)
        assert g.number_of_edges() == 6
        assert all(u[0] != v[0] for u, v in g.edges)

    def test_path_cycle_complete(self):
        assert make_topology(Topology.PATH, 3) == path3()
        assert make_topology(Topology.EVEN_CYCLE, 4).edges == {(1, 2), (2, 3), (3, 4), (1, 4)}
        assert make_topology(Topology.COMPLETE, 3) == k3()

    def test_tree(self):
        t = make_topology(Topology.TREE, parents=[None, 0, 0, 1])
        assert t.edges == {(0, 1), (0, 2), (1, 3)}

    def test_named_by_string(self):
        assert make_topology("path", 3) == path3()

    @pytest.mark.parametrize(
        ("kind", "sizes", "kwargs"),
        [
            (Topology.EVEN_CYCLE, (5,), {}),
            (Topology.EVEN_CYCLE, (2,), {}),
            (Topology.STAR, (0,), {}),
            (Topology.BINARY_STAR, (3,), {}),
            (Topology.PATH, (3,), {"labels": [1, 1, 2]}),
            (Topology.TREE, (), {"parents": [None, None]}),
            (Topology.TREE, (), {"parents": [None, 2, 1]}),
            (Topology.BINARY_STAR, (1, 1), {"labels": ([1], [1])}),
        ],
    )
    def test_invalid_sizes(self, kind, sizes, kwargs):
        with pytest.raises(InvalidSizeError):
            make_topology(kind, *sizes, **kwargs)

    @pytest.mark.parametrize(
        "graph",
        [
            make_topology(Topology.PATH, 7),
            make_topology(Topology.EVEN_CYCLE, 8),
            make_topology(Topology.STAR, 5),
            make_topology(Topology.BINARY_STAR, 4, 2),
            make_topology(Topology.COMPLETE_BIPARTITE, 3, 4),
            make_topology(Topology.HYPERCUBE, 4),
            make_topology(Topology.TREE, parents=[None, 0, 0, 1, 1, 2, 5]),
        ],
        ids=["path", "even-cycle", "star", "binary-star", "complete-bipartite", "hypercube", "tree"],
    )
    def test_families_are_two_colorable(self, graph):
        witness = is_two_colorable(graph)
        assert witness is not None and witness.validate(graph)


class TestProperties:
    @given(graphs())
    def test_complement_is_an_involution(self, g):
        assert complement(complement(g)) == g

    @given(graphs_with_vertex())
    def test_local_complement_is_an_involution(self, gv):
        g, v = gv
        assert local_complement(local_complement(g, v), v) == g

    @given(graphs_with_vertex())
    def test_local_complement_keeps_neighborhood(self, gv):
        g, v = gv
        assert neighborhood(local_complement(g, v), v) == neighborhood(g, v)

    @given(graphs_with_vertex())
    def test_local_complement_only_touches_the_neighborhood(self, gv):
        g, v = gv
        nbrs = neighborhood(g, v)
        out = local_complement(g, v)
        for a, b in itertools.combinations(g.sorted_vertices(), 2):
            inside = a in nbrs and b in nbrs
            assert out.has_edge(a, b) == (g.has_edge(a, b) != inside)

    @given(graphs_with_vertex())
    def test_delete_vertex_counts(self, gv):
        g, v = gv
        out = delete_vertex(g, v)
        assert len(out) == len(g) - 1
        assert out.number_of_edges() == g.number_of_edges() - g.degree(v)

    @given(graphs(), st.data())
    def test_induced_subgraph_edges(self, g, data):
        keep = data.draw(st.sets(st.sampled_from(g.sorted_vertices()))) if len(g) else set()
        sub = induced_subgraph(g, keep)
        assert sub.edges == {e for e in g.edges if set(e) <= keep}
