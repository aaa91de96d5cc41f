"""
Tests for the command-line surface: subcommands, exit codes and emitted documents.
"""

import argparse
import io
import json

import pytest

from src.main import build_construction, parse_range, parse_validation, run
from src.models.reports import ConstructionModel
from src.services.edge_list import EdgeListParser
from src.utils.exceptions import InvalidParameterError

K4_MINUS_EDGE = "n 4\n0 1\n0 2\n0 3\n1 2\n1 3\n"
PAW_STAR = "n 5\n0 1\n0 2\n0 3\n0 4\n1 2\n"


def invoke(argv, stdin_text=""):
    out = io.StringIO()
    code = run(argv, io.StringIO(stdin_text), out)
    return code, out.getvalue()


class TestArgumentTypes:
    def test_parse_range(self):
        assert parse_range("3..6") == [3, 4, 5, 6]
        assert parse_range("2,5") == [2, 5]
        assert parse_range("7") == [7]

    @pytest.mark.parametrize("text", ["6..3", "a..b", "x", "1,,2"])
    def test_parse_range_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)

    def test_parse_validation(self):
        assert parse_validation("exhaustive") == ("exhaustive", None)
        assert parse_validation("sampled") == ("sampled", None)
        assert parse_validation("sampled:40") == ("sampled", 40)

    @pytest.mark.parametrize("text", ["exhaustive:3", "sampled:0", "sampled:x", "partial"])
    def test_parse_validation_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_validation(text)

    def test_build_construction_requires_parameters(self):
        with pytest.raises(InvalidParameterError, match="--t is required for family gn"):
            build_construction("gn", n=8)


class TestConstruct:
    def test_edge_list_output(self):
        code, out = invoke(["construct", "--family", "gn", "--n", "8", "--t", "3"])
        assert code == 0
        assert out.splitlines()[:2] == ["n 8", "# family gn"]
        doc = EdgeListParser().parse(out)
        assert doc.graph.edge_count == 15
        assert doc.layout.sizes() == {"X": 3, "Y": 2, "Z": 3}

    def test_bipartite_family_writes_left_line(self):
        code, out = invoke(["construct", "--family", "g0", "--l", "3", "--m", "4", "--s", "2", "--t", "3"])
        assert code == 0
        assert "left 3" in out.splitlines()

    def test_json_report(self, tmp_path):
        path = tmp_path / "gn.json"
        code, _ = invoke(["construct", "--family", "hn", "--n", "9", "--s", "2", "--t", "3", "--json", str(path)])
        assert code == 0
        model = ConstructionModel.model_validate(json.loads(path.read_text()))
        assert model.edge_count == 10
        assert model.blocks["Z"] == [5, 9]
        assert model.left is None

    def test_missing_parameter(self):
        assert invoke(["construct", "--family", "gn", "--n", "8"])[0] == 2

    def test_negative_block(self):
        assert invoke(["construct", "--family", "gn", "--n", "4", "--t", "3"])[0] == 2


class TestVerify:
    def test_construction_is_weakly_saturated(self):
        code, out = invoke(["verify", "--host", "complete:8", "--pattern", "kst:3,3", "--construction", "gn"])
        assert code == 0
        verdict = json.loads(out)
        assert verdict["is_weakly_saturated"]
        assert verdict["added"] == 13
        assert "trace" not in verdict

    def test_graph_containing_the_pattern(self):
        code, out = invoke(["verify", "--host", "complete:4", "--pattern", "kst:2,2"], K4_MINUS_EDGE)
        assert code == 1
        verdict = json.loads(out)
        assert not verdict["is_pattern_free"]
        assert verdict["offending_copy"] is not None

    def test_bisaturated(self):
        argv = ["verify", "--host", "bipartite:2,2", "--pattern", "kst:2,1", "--bisaturated"]
        code, out = invoke(argv, "n 4\nleft 2\n0 2\n0 3\n")
        assert code == 0
        assert json.loads(out)["bisaturated"]

    def test_malformed_input(self):
        assert invoke(["verify", "--host", "complete:4", "--pattern", "kst:2,2"], "n 4\n0 0\n")[0] == 2

    def test_malformed_pattern(self):
        assert invoke(["verify", "--host", "complete:4", "--pattern", "k22"], K4_MINUS_EDGE)[0] == 2

    def test_trace_and_replay(self, tmp_path):
        trace = tmp_path / "trace.json"
        base = ["verify", "--host", "complete:5", "--pattern", "kst:2,2"]
        assert invoke(base + ["--trace", str(trace)], PAW_STAR)[0] == 0
        entries = json.loads(trace.read_text())
        assert [e["edge"] for e in entries] == [[1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]

        code, out = invoke(base + ["--replay", str(trace)], PAW_STAR)
        assert code == 0
        assert json.loads(out) == {"replay": True, "steps": 5, "error_code": None, "error": None}

        entries[0]["witness"] = entries[-1]["witness"]
        trace.write_text(json.dumps(entries))
        code, out = invoke(base + ["--replay", str(trace)], PAW_STAR)
        assert code == 1
        assert not json.loads(out)["replay"]

    def test_full_json_report(self, tmp_path):
        path = tmp_path / "verdict.json"
        argv = ["verify", "--host", "complete:5", "--pattern", "kst:2,2", "--policy", "rounds", "--json", str(path)]
        assert invoke(argv, PAW_STAR)[0] == 0
        report = json.loads(path.read_text())
        assert report["trace"]["policy"] == "rounds"
        assert report["trace"]["rounds"] == 2


class TestClose:
    def test_closure_output(self):
        code, out = invoke(["close", "--host", "complete:5", "--pattern", "kst:2,2"], PAW_STAR)
        assert code == 0
        assert out.splitlines()[1] == "# closure under kst:2,2"
        assert EdgeListParser().parse(out).graph.edge_count == 10

    def test_host_mismatch(self):
        assert invoke(["close", "--host", "complete:6", "--pattern", "kst:2,2"], PAW_STAR)[0] == 2


class TestCertify:
    def test_exhaustive(self):
        code, out = invoke(["certify", "--n", "8", "--t", "3"])
        assert code == 0
        cert = json.loads(out)
        assert cert["verdict"] == cert["formula_value"] == 15
        assert cert["validation"]["mode"] == "exhaustive"
        assert cert["p"] == 1009

    def test_sampled(self):
        code, out = invoke(["certify", "--n", "8", "--t", "3", "--p", "101", "--validate", "sampled:20", "--seed", "5"])
        assert code == 0
        validation = json.loads(out)["validation"]
        assert validation == {"mode": "sampled", "copies_checked": 20, "copies_total": 280, "seed": 5}

    def test_bad_prime(self):
        assert invoke(["certify", "--n", "8", "--t", "3", "--p", "7"])[0] == 2


class TestSearch:
    def test_complete_host(self):
        code, out = invoke(["search", "--host", "complete:5", "--pattern", "kst:2,3"])
        assert code == 0
        report = json.loads(out)
        assert report["minimum"] == 6
        assert len(report["witness"]) == 6

    def test_oriented(self):
        code, out = invoke(["search", "--host", "bipartite:3,3", "--pattern", "kst:2,2", "--oriented"])
        assert code == 0
        assert json.loads(out)["minimum"] == 5

    def test_oriented_needs_bipartite_host(self):
        assert invoke(["search", "--host", "complete:4", "--pattern", "kst:2,2", "--oriented"])[0] == 2

    def test_budget_exhausted(self):
        assert invoke(["search", "--host", "complete:5", "--pattern", "kst:2,3", "--budget", "1"])[0] == 3


class TestTables:
    def test_csv(self, tmp_path):
        path = tmp_path / "rows.json"
        code, out = invoke(["tables", "--theorem", "ktt", "--n", "4", "--t", "2", "--json", str(path)])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "theorem,n,s,t,k,l,m,formula,construction_edges,closure_verified,certificate_rank,oracle"
        assert len(lines) == 2
        assert json.loads(path.read_text())[0]["formula"] == "4"

    def test_unknown_theorem(self):
        assert invoke(["tables", "--theorem", "thm:9"])[0] == 2


class TestParser:
    def test_unknown_subcommand(self):
        assert invoke(["frobnicate"])[0] == 2

    def test_help(self):
        assert invoke(["--help"])[0] == 0

    def test_log_flags_after_subcommand(self):
        code, _ = invoke(["construct", "--family", "lovasz", "--n", "6", "--r", "4", "--log-level", "WARNING", "--no-log-json"])
        assert code == 0
