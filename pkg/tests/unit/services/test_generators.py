"""
Tests for host generators and graph transforms.
"""

import pytest

from src.models.graph import Edge, Graph, SideLabeling
from src.models.pattern import Pattern
from src.services.generators import bipartite_cone, complete_bipartite, complete_graph, cone, edge_complement_list
from src.services.patterns import find_copy
from src.utils.exceptions import GraphMismatchError, InvalidParameterError, WsatErrorCodes


class TestHosts:
    def test_complete_graph(self):
        assert complete_graph(5).edge_count == 10
        assert complete_graph(0).n == 0
        assert complete_graph(1).edge_count == 0

    def test_complete_graph_negative(self):
        with pytest.raises(InvalidParameterError):
            complete_graph(-1)

    def test_complete_bipartite(self):
        g, sides = complete_bipartite(2, 3)
        assert g.edge_count == 6
        assert sides.ell == 2 and sides.m == 3
        assert sides.check_graph(g) is None
        assert not g.has_edge(2, 3)


class TestCone:
    def setup_method(self):
        self.path = Graph.from_edges(3, [(0, 1), (1, 2)])

    def test_independent_apex_set(self):
        g = cone(self.path, 2)
        assert g.n == 5
        assert g.edge_count == 2 + 2 * 3
        assert not g.has_edge(3, 4)

    def test_clique_apex_set(self):
        g = cone(self.path, 2, clique=True)
        assert g.edge_count == 2 + 2 * 3 + 1
        assert g.has_edge(3, 4)

    def test_original_graph_is_induced(self):
        g = cone(self.path, 3)
        assert g.without_edges([(v, x) for v in range(3) for x in range(3, 6)]).edges() == self.path.edges()

    def test_zero_is_identity(self):
        assert cone(self.path, 0) == self.path


class TestBipartiteCone:
    def test_layout_and_edge_count(self):
        g = Graph.from_edges(2, [(0, 1)])
        sides = SideLabeling.from_left_count(2, 1)
        lifted, new_sides = bipartite_cone(g, sides, 1)
        # original Left, new Left, original Right, new Right
        assert lifted.edges() == [Edge(0, 2), Edge(0, 3), Edge(1, 2)]
        assert new_sides.ell == 2 and new_sides.m == 2
        assert new_sides.check_graph(lifted) is None

    def test_edge_count_formula(self):
        g, sides = complete_bipartite(2, 3)
        g = g.without_edges([(0, 2), (1, 3)])
        lifted, new_sides = bipartite_cone(g, sides, 2)
        assert lifted.edge_count == g.edge_count + 2 * (2 + 3)
        assert (new_sides.ell, new_sides.m) == (4, 5)

    def test_stays_ktt_free_on_an_empty_base(self):
        g = Graph.empty(6)
        lifted, new_sides = bipartite_cone(g, SideLabeling.from_left_count(6, 3), 2)
        assert find_copy(lifted, Pattern.kst(3, 3)) is None

    def test_same_side_edge_rejected(self):
        g = Graph.from_edges(3, [(1, 2)])
        with pytest.raises(GraphMismatchError) as exc:
            bipartite_cone(g, SideLabeling.from_left_count(3, 1), 1)
        assert exc.value.error_code == WsatErrorCodes.SAME_SIDE_EDGE


class TestEdgeComplementList:
    def test_lexicographic(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert edge_complement_list(g, complete_graph(4)) == [Edge(0, 2), Edge(0, 3), Edge(1, 3)]

    def test_bipartite_host(self):
        host, _ = complete_bipartite(2, 2)
        assert edge_complement_list(Graph.empty(4), host) == [Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3)]

    def test_vertex_count_mismatch(self):
        with pytest.raises(GraphMismatchError) as exc:
            edge_complement_list(Graph.empty(3), complete_graph(4))
        assert exc.value.error_code == WsatErrorCodes.VERTEX_COUNT_MISMATCH

    def test_edge_outside_host(self):
        host, _ = complete_bipartite(2, 2)
        with pytest.raises(GraphMismatchError) as exc:
            edge_complement_list(Graph.from_edges(4, [(0, 1)]), host)
        assert exc.value.error_code == WsatErrorCodes.NOT_SPANNING_SUBGRAPH
