"""
Tests for the exhaustive wsat oracle.
"""

import pytest

from src.models.graph import Graph
from src.models.pattern import Pattern
from src.services.generators import complete_bipartite, complete_graph
from src.services.search import (
    WsatSearch,
    canonical_form,
    wsat_bruteforce,
    wsat_bruteforce_bipartite,
    wsat_bruteforce_complete,
)
from src.utils.exceptions import BudgetExceededError, InvalidParameterError
from src.utils.formulas import alon_bisaturation, trivial_lower, wsat_bipartite, wsat_clique


class TestCompleteHosts:
    def test_triangle_in_k5(self):
        result = wsat_bruteforce_complete(5, Pattern.clique(3))
        assert result.minimum == 4 == wsat_clique(5, 3)
        assert result.witness == Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        assert result.host == "complete:5"
        assert result.pattern == "clique:3"
        assert not result.vacuous

    def test_c4_in_k4(self):
        result = wsat_bruteforce_complete(4, Pattern.kst(2, 2))
        assert result.minimum == 4
        assert result.start_m == 2

    def test_k23_in_k5(self):
        result = wsat_bruteforce_complete(5, Pattern.kst(2, 3))
        assert result.minimum == 6
        assert result.start_m == 3

    def test_vacuous_host(self):
        result = wsat_bruteforce_complete(3, Pattern.kst(2, 2))
        assert result.vacuous
        assert result.minimum == 3
        assert result.witness == complete_graph(3)

    def test_pruning_does_not_change_the_answer(self):
        pruned = wsat_bruteforce_complete(5, Pattern.clique(3))
        bare = wsat_bruteforce_complete(
            5, Pattern.clique(3), prune_min_degree=False, prune_pattern_free=False, isomorph_rejection=False
        )
        assert bare.minimum == pruned.minimum
        assert bare.witness == pruned.witness
        assert pruned.explored < bare.explored
        assert bare.pruning == {"min_degree": False, "pattern_free": False, "isomorph_rejection": False}

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as exc:
            wsat_bruteforce_complete(5, Pattern.kst(2, 3), budget=1)
        assert exc.value.budget == 1
        assert exc.value.last_completed_m == 3


class TestBipartiteHosts:
    def test_oriented_matches_closed_form(self):
        result = wsat_bruteforce_bipartite(3, 3, 2, 2, oriented=True)
        assert result.minimum == 5 == alon_bisaturation(3, 3, 2, 2)
        assert result.oriented
        assert result.host == "bipartite:3,3"

    def test_oriented_k23_in_k23(self):
        result = wsat_bruteforce_bipartite(2, 3, 2, 3, oriented=True)
        assert result.minimum == 5 == alon_bisaturation(2, 3, 2, 3)

    def test_unoriented(self):
        result = wsat_bruteforce_bipartite(2, 3, 2, 2, oriented=False)
        assert result.minimum == 4 == wsat_bipartite(2, 3, 2, 2)
        assert not result.oriented

    def test_start_m(self):
        host, _ = complete_bipartite(2, 3)
        assert WsatSearch(host, Pattern.kst(2, 2)).start_m() == 3
        assert WsatSearch(complete_graph(7), Pattern.kst(3, 3)).start_m() == 7 == trivial_lower(7, 3)
        assert WsatSearch(complete_graph(5), Pattern.clique(3)).start_m() == 0

    def test_oriented_needs_kst(self):
        host, sides = complete_bipartite(2, 2)
        with pytest.raises(InvalidParameterError):
            WsatSearch(host, Pattern.clique(3), sides)


class TestExplicitHosts:
    def test_isomorph_rejection_off_without_cells(self):
        host = complete_graph(4).without_edges([(0, 1)])
        search = WsatSearch(host, Pattern.clique(3))
        assert not search.pruning["isomorph_rejection"]
        result = search.run()
        assert result.host == "explicit:4:5"
        assert result.minimum == 3

    def test_wsat_bruteforce_with_cells(self):
        result = wsat_bruteforce(complete_graph(4), Pattern.clique(3), cells=[list(range(4))])
        assert result.minimum == 3
        assert result.pruning["isomorph_rejection"]


class TestCanonicalForm:
    def test_isomorphic_graphs_agree(self):
        a = Graph.from_edges(4, [(0, 1), (1, 2)])
        b = Graph.from_edges(4, [(3, 1), (1, 0)])
        cells = [list(range(4))]
        assert canonical_form(a.adjacency, cells) == canonical_form(b.adjacency, cells)

    def test_non_isomorphic_graphs_differ(self):
        path = Graph.from_edges(4, [(0, 1), (1, 2)])
        matching = Graph.from_edges(4, [(0, 1), (2, 3)])
        cells = [list(range(4))]
        assert canonical_form(path.adjacency, cells) != canonical_form(matching.adjacency, cells)

    def test_cells_are_respected(self):
        a = Graph.from_edges(4, [(0, 2)])
        b = Graph.from_edges(4, [(1, 3)])
        c = Graph.from_edges(4, [(0, 1)])
        cells = [[0, 1], [2, 3]]
        assert canonical_form(a.adjacency, cells) == canonical_form(b.adjacency, cells)
        assert canonical_form(a.adjacency, cells) != canonical_form(c.adjacency, cells)


@pytest.mark.slow
def test_worker_processes_agree():
    single = wsat_bruteforce_complete(5, Pattern.kst(2, 3))
    pooled = wsat_bruteforce_complete(5, Pattern.kst(2, 3), workers=2)
    assert pooled.minimum == single.minimum
    assert pooled.witness == single.witness
