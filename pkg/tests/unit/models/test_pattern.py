"""
Tests for pattern descriptors and copy witnesses.
"""

import pytest

from src.models.graph import Edge, Graph
from src.models.pattern import CopyWitness, Pattern, PatternKind
from src.utils.exceptions import InvalidParameterError, WsatErrorCodes


class TestPattern:
    """Test Pattern construction and derived quantities"""

    def test_kst(self):
        p = Pattern.kst(2, 3)
        assert p.kind is PatternKind.COMPLETE_MULTIPARTITE
        assert p.sizes == (2, 3)
        assert p.vertex_count == 5
        assert p.edge_count == 6
        assert p.min_degree == 2
        assert p.is_bipartite_kst
        assert p.literal == "kst:2,3"

    def test_clique(self):
        p = Pattern.clique(4)
        assert p.edge_count == 6
        assert p.min_degree == 3
        assert p.literal == "clique:4"
        assert not p.is_bipartite_kst

    def test_ktk_and_multi_literals(self):
        assert Pattern.ktk(2, 3).literal == "ktk:2^3"
        assert Pattern.ktk(2, 3).edge_count == 12
        assert Pattern.multipartite([1, 2, 3]).literal == "multi:1,2,3"

    def test_to_graph_classes_are_consecutive(self):
        g = Pattern.kst(2, 2).to_graph()
        assert g.edges() == [Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3)]

    def test_explicit(self):
        path = Graph.from_edges(3, [(0, 1), (1, 2)])
        p = Pattern.explicit(path)
        assert not p.is_multipartite
        assert p.vertex_count == 3
        assert p.edge_count == 2
        assert p.min_degree == 1
        assert p.to_graph() is path
        assert p.literal == "explicit:3:2"

    def test_single_class_rejected(self):
        with pytest.raises(InvalidParameterError) as exc:
            Pattern.multipartite([3])
        assert exc.value.error_code == WsatErrorCodes.EDGELESS_PATTERN

    def test_zero_class_rejected(self):
        with pytest.raises(InvalidParameterError):
            Pattern.kst(0, 2)

    def test_edgeless_explicit_rejected(self):
        with pytest.raises(InvalidParameterError) as exc:
            Pattern.explicit(Graph.empty(3))
        assert exc.value.error_code == WsatErrorCodes.EDGELESS_PATTERN

    def test_patterns_are_hashable(self):
        assert Pattern.kst(2, 2) == Pattern.kst(2, 2)
        assert len({Pattern.kst(2, 2), Pattern.kst(2, 2), Pattern.clique(3)}) == 2


class TestCopyWitness:
    def test_from_classes_sorts_and_flattens(self):
        w = CopyWitness.from_classes([[4, 1], [3, 0, 2]], Edge(0, 1))
        assert w.classes == ((1, 4), (0, 2, 3))
        assert w.mapping == (1, 4, 0, 2, 3)
        assert w.vertices == frozenset(range(5))
        assert w.anchor == Edge(0, 1)

    def test_class_sets_ignore_order(self):
        a = CopyWitness.from_classes([[0, 1], [2, 3]])
        b = CopyWitness.from_classes([[3, 2], [1, 0]])
        assert a.class_sets() == b.class_sets()
