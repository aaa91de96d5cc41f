"""
Tests for the explicit constructions: block sizes, edge counts and H-freeness.
"""

import pytest

from src.models.pattern import Pattern
from src.services.bootstrap import closure, verify_weakly_saturated
from src.services.constructions import (
    GN_PHASES,
    construct_fkt,
    construct_fn_ktt1,
    construct_g0,
    construct_gn,
    construct_hn,
    construct_lovasz,
    construct_rel,
    lovasz_layout,
)
from src.services.generators import complete_graph, edge_complement_list
from src.services.patterns import find_copy, is_pattern_free
from src.utils.exceptions import InvalidParameterError, WsatErrorCodes
from src.utils.formulas import fkt_edges, kst_upper, wsat_bipartite, wsat_clique, wsat_ktt, wsat_ktt1


class TestConstructGn:
    def test_blocks_and_edges(self):
        graph, layout = construct_gn(8, 3)
        assert layout.sizes() == {"X": 3, "Y": 2, "Z": 3}
        assert graph.edge_count == 15
        assert all(graph.has_edge(a, b) for a in layout["X"] for b in layout["X"] if a < b)
        assert not any(graph.has_edge(a, b) for a in layout["Z"] for b in layout["Z"] if a < b)
        assert not any(graph.has_edge(a, b) for a in layout["Y"] for b in layout["Y"] if a < b)

    @pytest.mark.parametrize("n,t", [(3, 2), (6, 3), (9, 4), (12, 4), (15, 5)])
    def test_edge_count_formula(self, n, t):
        graph, _ = construct_gn(n, t)
        assert graph.edge_count == wsat_ktt(n, t)
        assert is_pattern_free(graph, Pattern.kst(t, t))

    @staticmethod
    def _phases(layout, edges):
        rank = {frozenset(phase): i for i, phase in enumerate(GN_PHASES)}
        return [rank[frozenset((layout.block_of(e.u), layout.block_of(e.v)))] for e in edges]

    def test_closure_in_phase_order(self):
        graph, layout = construct_gn(8, 3)
        host = complete_graph(8)
        order = layout.schedule(edge_complement_list(graph, host), GN_PHASES)
        closed, trace = closure(graph, host, Pattern.kst(3, 3), order=order)
        assert closed == host
        assert self._phases(layout, trace.edges) == [0] * 9 + [1] * 3 + [2]

    def test_lex_closure_adds_y_edge_before_z_edges(self):
        graph, layout = construct_gn(8, 3)
        _, trace = closure(graph, complete_graph(8), Pattern.kst(3, 3))
        phases = self._phases(layout, trace.edges)
        assert phases[:10] == [0] * 9 + [2]
        assert sorted(phases) == [0] * 9 + [1] * 3 + [2]

    def test_negative_block(self):
        with pytest.raises(InvalidParameterError) as exc:
            construct_gn(4, 3)
        assert exc.value.error_code == WsatErrorCodes.NEGATIVE_BLOCK


class TestConstructFnKtt1:
    def test_edges(self):
        graph, layout = construct_fn_ktt1(9, 3)
        assert layout.names == ["X", "Y", "y*", "Z"]
        assert graph.edge_count == 18 == wsat_ktt1(9, 3)
        y_star = layout["y*"][0]
        assert graph.degree(y_star) == 3

    def test_ktt1_free(self):
        graph, _ = construct_fn_ktt1(7, 2)
        assert is_pattern_free(graph, Pattern.kst(2, 3))

    def test_small_n_rejected(self):
        with pytest.raises(InvalidParameterError):
            construct_fn_ktt1(6, 3)

    def test_closure_needs_n_at_least_3t_minus_1(self):
        short = verify_weakly_saturated(construct_fn_ktt1(7, 3)[0], complete_graph(7), Pattern.kst(3, 4))
        assert short.is_pattern_free
        assert not short.closure_complete
        assert sorted(short.missing) == [(3, 4), (3, 5), (4, 5)]

        enough = verify_weakly_saturated(construct_fn_ktt1(8, 3)[0], complete_graph(8), Pattern.kst(3, 4))
        assert enough.is_weakly_saturated


class TestConstructHn:
    def test_blocks_and_edges(self):
        graph, layout = construct_hn(9, 2, 3)
        assert layout.sizes() == {"X": 1, "Y1": 1, "Y2": 1, "x*": 1, "W": 1, "Z": 4}
        assert graph.edge_count == 10 == kst_upper(9, 2, 3)

    @pytest.mark.parametrize("n,s,t", [(9, 2, 3), (11, 2, 4), (13, 3, 4)])
    def test_degrees_and_freeness(self, n, s, t):
        graph, layout = construct_hn(n, s, t)
        assert graph.edge_count == kst_upper(n, s, t)
        assert all(graph.degree(v) == s - 1 for v in list(layout["W"]) + list(layout["Z"]))
        assert find_copy(graph, Pattern.kst(s, t)) is None

    def test_requires_s_below_t(self):
        with pytest.raises(InvalidParameterError):
            construct_hn(12, 3, 3)


class TestConstructFkt:
    def test_worked_example(self):
        graph, layout = construct_fkt(12, 3, 2)
        assert layout.sizes() == {"C1": 2, "C2": 2, "C3": 1, "Z": 7}
        assert graph.edge_count == 30 == fkt_edges(12, 3, 2)

    def test_k2_is_gn(self):
        fkt, _ = construct_fkt(9, 2, 3)
        gn, _ = construct_gn(9, 3)
        assert fkt == gn

    def test_t1_is_lovasz_graph(self):
        fkt, _ = construct_fkt(7, 4, 1)
        assert fkt.edge_count == construct_lovasz(7, 4).edge_count == wsat_clique(7, 4)

    def test_ktk_free(self):
        graph, _ = construct_fkt(10, 3, 2)
        assert is_pattern_free(graph, Pattern.ktk(2, 3))

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            construct_fkt(10, 1, 2)


class TestConstructLovasz:
    def test_edges(self):
        graph = construct_lovasz(6, 4)
        assert lovasz_layout(6, 4).sizes() == {"K": 2, "I": 4}
        assert graph.edge_count == 9 == wsat_clique(6, 4)
        assert is_pattern_free(graph, Pattern.clique(4))

    def test_r_above_n(self):
        with pytest.raises(InvalidParameterError):
            construct_lovasz(3, 4)


class TestConstructG0:
    def test_blocks_and_edges(self):
        graph, sides, layout = construct_g0(3, 4, 2, 3)
        assert [len(r) for _, r in layout] == [1, 1, 1, 1, 1, 2]
        assert graph.edge_count == 7 == wsat_bipartite(3, 4, 2, 3)
        assert sides.ell == 3 and sides.m == 4
        assert sides.check_graph(graph) is None

    @pytest.mark.parametrize("ell,m,s,t", [(2, 2, 2, 2), (3, 3, 2, 3), (4, 5, 3, 4), (3, 5, 3, 3)])
    def test_edge_count_formula(self, ell, m, s, t):
        graph, _, _ = construct_g0(ell, m, s, t)
        assert graph.edge_count == wsat_bipartite(ell, m, s, t)
        assert is_pattern_free(graph, Pattern.kst(s, t))

    def test_class_too_small(self):
        with pytest.raises(InvalidParameterError):
            construct_g0(1, 4, 2, 3)


class TestConstructRel:
    def test_edges(self):
        graph, sides, layout = construct_rel(9, 3)
        assert graph.edge_count == 17 == wsat_ktt(9, 3)
        assert sides.ell == 3
        clique = list(layout["Y1"]) + [layout["Y3"][0]]
        assert all(graph.has_edge(a, b) for a in clique for b in clique if a < b)

    def test_ktt_free(self):
        graph, _, _ = construct_rel(10, 3)
        assert is_pattern_free(graph, Pattern.kst(3, 3))

    def test_small_n_rejected(self):
        with pytest.raises(InvalidParameterError):
            construct_rel(5, 3)
