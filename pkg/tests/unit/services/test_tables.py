"""
Tests for theorem-table rows and their CSV rendering.
"""

import pytest

from src.services.tables import (
    CSV_COLUMNS,
    TableRanges,
    TableRow,
    TableService,
    row_alon,
    row_bip,
    row_clique,
    row_genst,
    row_ktt,
    row_ktt1,
    row_multi,
    row_rel,
    tables,
)
from src.utils.exceptions import InvalidParameterError


class TestTableRow:
    def test_consistent_exact(self):
        row = TableRow("ktt", n=8, s=3, t=3, formula="15", construction_edges=15, closure_verified="true", certificate_rank=15)
        assert row.consistent()

    def test_oracle_disagrees(self):
        row = TableRow("ktt", n=8, formula="15", construction_edges=15, closure_verified="true", oracle=14)
        assert not row.consistent()

    def test_failed_closure(self):
        row = TableRow("ktt", n=8, formula="15", construction_edges=15, closure_verified="false")
        assert not row.consistent()

    def test_bound_pair(self):
        row = TableRow("genst", formula="10..12", construction_edges=12, closure_verified="true", oracle=11)
        assert row.consistent()
        row.construction_edges = 11
        assert not row.consistent()

    def test_skipped_is_consistent(self):
        assert TableRow("ktt", n=3, s=3, t=3).consistent()

    def test_csv_values(self):
        row = TableRow("ktt", n=8, s=3, t=3, formula="15", construction_edges=15, closure_verified="true")
        assert ",".join(row.csv_values()) == "ktt,8,3,3,,,,15,15,true,,"

    def test_to_model_joins_notes(self):
        row = TableRow("rel", n=9, notes=["a", "b"])
        model = row.to_model()
        assert model.note == "a; b"
        assert model.closure_verified == "skipped"


class TestTableRanges:
    def test_default_window(self):
        assert TableRanges().n_values(5) == [5, 6, 7, 8, 9]

    def test_explicit_and_capped(self):
        assert TableRanges(n=[9, 11]).n_values(5) == [9, 11]
        assert TableRanges(n_max=6).n_values(5) == [5, 6]

    def test_sides(self):
        assert TableRanges().sides() == ([3], [3])
        assert TableRanges(l=[2], m=[4, 5]).sides() == ([2], [4, 5])


class TestRows:
    def test_clique(self):
        row = row_clique(5, 3)
        assert (row.k, row.t) == (3, 1)
        assert row.formula == "4"
        assert row.construction_edges == 4
        assert row.closure_verified == "true"
        assert row.oracle == 4
        assert row.consistent()

    def test_ktt(self):
        row = row_ktt(7, 3)
        assert row.formula == "13"
        assert row.construction_edges == 13
        assert row.certificate_rank == 13
        assert row.oracle is None
        assert row.consistent()

    def test_ktt_out_of_range(self):
        row = row_ktt(3, 3)
        assert row.skipped
        assert row.formula == ""
        assert row.notes

    def test_ktt1(self):
        row = row_ktt1(7, 2)
        assert row.formula == "8"
        assert row.construction_edges == 8
        assert row.consistent()

    def test_ktt1_closure_range(self):
        row = row_ktt1(7, 3)
        assert row.skipped
        assert row.formula == ""
        assert "3t-1" in row.notes[0]

    def test_genst(self):
        row = row_genst(9, 2, 3)
        assert row.formula == "10..10"
        assert row.construction_edges == 10
        assert row.closure_verified == "true"
        assert row.consistent()

    def test_bip(self):
        row = row_bip(3, 3, 2, 2)
        assert row.formula == "5"
        assert row.construction_edges == 5
        assert row.oracle == 5
        assert row.consistent()

    def test_bip_lift(self):
        row = row_bip(4, 4, 2, 3)
        assert row.formula == "8"
        assert row.construction_edges == 8
        assert row.closure_verified == "true"
        assert "lift by 1 vertices per side to K_t,t verified" in row.notes

    def test_rel_identity(self):
        row = row_rel(9, 3)
        assert (row.l, row.m) == (4, 5)
        assert row.formula == "17"
        assert row.construction_edges == 17
        assert "wsat(K_l,m) + C(t,2) = 17" in row.notes
        assert row.consistent()

    def test_multi(self):
        row = row_multi(7, 3, 2)
        assert row.formula == "15"
        assert row.construction_edges == 15
        assert row.closure_verified == "true"

    def test_alon(self):
        row = row_alon(2, 3, 2, 2)
        assert row.formula == "4"
        assert row.oracle == 4
        assert row.construction_edges == 4
        assert row.consistent()

    def test_alon_host_too_large(self):
        row = row_alon(4, 4, 2, 2)
        assert row.skipped
        assert row.oracle is None


class TestTableService:
    def test_alias_and_order(self):
        rows = TableService().rows("cor:rel", TableRanges(n=[7, 9], t=[3]))
        assert [r.theorem for r in rows] == ["rel", "rel"]
        assert [r.n for r in rows] == [7, 9]
        assert all(r.consistent() for r in rows)

    def test_unknown_theorem(self):
        with pytest.raises(InvalidParameterError):
            tables("thm:9", TableRanges())

    def test_to_csv(self):
        rows = tables("ktt", TableRanges(n=[4], t=[2]))
        lines = TableService.to_csv(rows).splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[1].startswith("ktt,4,2,2,,,,4,4,true,4,")

    @pytest.mark.slow
    def test_worker_processes_keep_order(self):
        ranges = TableRanges(n=[7, 8, 9], t=[2])
        single = tables("ktt1", ranges)
        pooled = tables("ktt1", ranges, workers=2)
        assert [r.csv_values() for r in pooled] == [r.csv_values() for r in single]
