import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
import yaml

from seqeffect.cli import run
from seqeffect.io import (ModelDocument, ParseError, dump, emit_document, emit_element,
                          emit_model, load, parse_document, parse_element, parse_model,
                          parse_rational)
from seqeffect.models import ONE, ZERO, Branch, HorizontalSum, Interval, Mat, MatrixInterval

from conftest import CORPUS, corpus_files

ALL = [p for sub in ("valid", "search", "counterexamples") for p in corpus_files(sub)]


def cli(*argv):
    buf = io.StringIO()
    status = run([str(a) for a in argv], buf)
    return status, buf.getvalue(), yaml.safe_load(buf.getvalue())


class TestRationals:
    @pytest.mark.parametrize("s,q", [("1/2", F(1, 2)), ("0", F(0)), ("1", F(1)), ("-3/4", F(-3, 4))])
    def test_accepted(self, s, q):
        assert parse_rational(s, "x") == q

    @pytest.mark.parametrize("s", ["2/0", "2/4", "1/1", "0.5", "", "1/-2", 0.5])
    def test_rejected(self, s):
        with pytest.raises(ParseError):
            parse_rational(s, "x")


@pytest.mark.parametrize("path", ALL, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_round_trip(path):
    doc = load(path)
    again = parse_document(emit_document(doc))
    assert emit_model(again.model) == emit_model(doc.model)
    assert again.extra == doc.extra
    assert emit_document(again) == emit_document(doc)


def test_dump_then_load(tmp_path):
    doc = ModelDocument(HorizontalSum([Interval(), Interval()]), {"name": "h"})
    dump(doc, tmp_path / "h.json")
    assert emit_document(load(tmp_path / "h.json")) == emit_document(doc)


class TestElements:
    def test_horizontal(self, H):
        e = Branch(1, F(1, 3))
        enc = emit_element(H, e)
        assert enc == {"branch": 1, "inner": {"rat": "1/3"}}
        assert parse_element(H, enc) == e
        assert parse_element(H, "one") is ONE and parse_element(H, {"zero": True}) is ZERO

    def test_matrix(self):
        m = MatrixInterval()
        a = Mat.of([[F(1, 2), F(1, 4)], [F(1, 4), F(1, 2)]])
        assert parse_element(m, emit_element(m, a)) == a

    def test_non_member(self):
        with pytest.raises(ParseError):
            parse_element(MatrixInterval(), {"mat": [["1", "0"], ["0", "0"]]})

    def test_inner_extremes_normalize(self, H):
        assert parse_element(H, {"branch": 0, "inner": {"rat": "1"}}) is ONE
        assert parse_element(H, {"branch": 1, "inner": {"rat": "0"}}) is ZERO


class TestParseErrors:
    def test_json_syntax_location(self):
        with pytest.raises(ParseError) as exc:
            parse_document('{"schema": 1,\n  "model": }')
        assert exc.value.location.startswith("line 2")

    def test_nested_location(self):
        with pytest.raises(ParseError) as exc:
            parse_model({"kind": "direct_sum", "parts": [{"kind": "interval"}, {"kind": "nope"}]})
        assert "parts[1]" in exc.value.location


@pytest.mark.parametrize("path", corpus_files("malformed"), ids=lambda p: p.stem)
def test_malformed_give_usage_status(path):
    status, _, rep = cli("check", path)
    assert status == 2 and "error" in rep


@pytest.mark.parametrize("path", ALL, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_corpus_expectations(path):
    expect = json.loads(path.read_text())["expect"]
    if "check" in expect:
        assert cli("check", path)[0] == expect["check"]
    if "search_solutions" in expect:
        status, _, rep = cli("search", path)
        assert status == 0 and rep["solution_count"] == expect["search_solutions"]


class TestCliExamples:
    def test_boolean_passes(self):
        status, _, rep = cli("check", CORPUS / "valid/boolean2.json")
        assert status == 0 and rep["sea"]["verdict"] == "pass"

    def test_chain_counterexample(self):
        status, _, rep = cli("check", CORPUS / "counterexamples/chain3_half_squared_zero.json")
        assert status == 1
        assert "S1" in {v["axiom"] for v in rep["sea"]["violations"]}

    def test_zero_denominator(self):
        status, _, rep = cli("check", CORPUS / "malformed/zero_denominator.json")
        assert status == 2 and rep["error"] == "parse error"

    def test_search_mv2(self):
        status, text, _ = cli("search", CORPUS / "search/mv2.json")
        assert status == 0 and "solutions: 0\n" in text

    def test_search_boolean(self):
        status, text, _ = cli("search", CORPUS / "valid/boolean2.json")
        assert status == 0 and "solutions: 1 (meet)\n" in text

    def test_search_refuses_interval(self):
        status, _, rep = cli("search", CORPUS / "valid/interval.json")
        assert status == 2 and "search requires finite model" in rep["message"]

    def test_decompose_three_blocks(self):
        status, _, rep = cli("decompose", CORPUS / "valid/direct_sum_three_blocks.json")
        assert status == 0
        assert [leaf["block"] for leaf in rep["leaves"]] == ["boolean", "convex", "aconvex"]
        assert all(rep["evidence"].values())

    def test_analyze_floor(self):
        status, _, rep = cli("analyze", CORPUS / "valid/horizontal_sum.json", "--op", "floor",
                             "--element", '{"branch": 1, "inner": {"rat": "3/4"}}')
        assert status == 0 and rep["result"] == "zero"

    def test_analyze_halves_of_one(self):
        status, _, rep = cli("analyze", CORPUS / "valid/horizontal_sum.json", "--op", "halves",
                             "--element", "one")
        assert status == 0 and rep["count"] == 2

    def test_divide_one_in_horizontal_sum(self):
        status, _, rep = cli("analyze", CORPUS / "valid/horizontal_sum.json", "--op", "divide",
                             "--element", "one")
        assert status == 2 and rep["error"] == "PreconditionError"

    def test_missing_element(self):
        status, _, _ = cli("analyze", CORPUS / "valid/interval.json", "--op", "floor")
        assert status == 2

    def test_missing_file(self, tmp_path):
        assert cli("check", tmp_path / "absent.json")[0] == 2


@pytest.mark.parametrize("argv", [
    ["check", "valid/horizontal_sum.json"],
    ["search", "search/mo2.json", "--canonical"],
    ["analyze", "valid/matrix_interval.json", "--op", "center"],
])
def test_output_is_byte_identical(argv):
    argv = [argv[0], str(CORPUS / argv[1]), *argv[2:]]
    first = cli(*argv)[1]
    assert cli(*argv)[1] == first
    proc = subprocess.run([sys.executable, "-m", "seqeffect", *argv],
                          capture_output=True, text=True, check=False)
    assert proc.stdout == first


def test_timing_flag_is_opt_in():
    path = CORPUS / "valid/boolean1.json"
    assert "seconds" not in cli("check", path)[2]
    assert "seconds" in cli("check", path, "--timing")[2]
