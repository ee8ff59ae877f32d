import json
import shutil
from pathlib import Path

import pytest

from skan.cli.formats import dumps, parse, parse_text, serialize
from skan.cli.main import main, run_command
from skan.core.homsets import find_isomorphism
from skan.errors import ParseError, SchemaError

DATA = Path(__file__).resolve().parents[1] / "src" / "skan" / "cli" / "data"


@pytest.fixture
def data(tmp_path):
    for f in DATA.iterdir():
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


@pytest.mark.parametrize("name, kind", [("s1.ssx", "sset"), ("bd3.ssx", "sset"),
                                        ("s3.sgx", "sgroup"), ("z2.sgx", "sgroup")])
def test_canonical_documents_round_trip_byte_for_byte(name, kind):
    text = (DATA / name).read_text(encoding="utf-8")
    assert serialize(parse(DATA / name, kind)) == text


def test_bundle_round_trip_inlines_references(data):
    b = parse(data / "dbl.bdl", "bundle")
    doc = json.loads(serialize(b))
    assert isinstance(doc["body"]["base"], dict)
    again = parse_text(serialize(b), base=data, expect="bundle")
    assert find_isomorphism(again.P, b.P) is not None
    assert serialize(again) == serialize(b)


def test_unknown_face_target_names_the_field():
    doc = {"format": "ssx/1", "kind": "sset",
           "body": {"generators": [["v"], ["e"]], "faces": {"e": ["v", "w"]}}}
    with pytest.raises(SchemaError) as e:
        parse_text(dumps(doc), expect="sset")
    assert e.value.field == "faces"


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_text('{\n  "format": "ssx/1",\n  "kind" "sset"\n}\n')
    assert e.value.line == 3 and e.value.column > 1


def test_wrong_kind_and_format_are_schema_errors(data):
    with pytest.raises(SchemaError):
        parse(data / "s1.ssx", "sgroup")
    with pytest.raises(SchemaError) as e:
        parse_text(json.dumps({"format": "ssx/0", "kind": "sset", "body": {}}))
    assert e.value.field == "format"


def test_wbar_writes_output(data):
    out = data / "w.ssx"
    code, rep = run_command(["wbar", "--group", str(data / "z2.sgx"), "--bound", "4",
                             "--out", str(out)])
    assert code == 0
    assert rep["outputs"]["counts"] == [1, 2, 4, 8, 16]
    W = parse(out, "sset")
    assert W.counts(4) == [1, 2, 4, 8, 16]
    assert rep["inputs"]["group"]["file"] == "z2.sgx"


def test_classify_double_cover(data):
    code, rep = run_command(["classify", "--bundle", str(data / "dbl.bdl")])
    assert code == 0
    assert rep["outputs"]["principality"]["kind"] == "STRICT"


def test_h1_prints_summary(data, capsys):
    rpt = data / "h1.json"
    code = main(["h1", "--base", str(data / "s1.ssx"), "--group", str(data / "z2.sgx"),
                 "--report", str(rpt)])
    assert code == 0
    out = capsys.readouterr().out
    assert "classes: 2" in out
    rep = json.loads(rpt.read_text())
    assert rep["outputs"]["routes_agree"] is True


def test_reports_are_deterministic_apart_from_timings(data):
    argv = ["hn", "--cover", str(data / "edges.cov"), "--group", str(data / "z2.sgx")]
    _, r1 = run_command(argv)
    _, r2 = run_command(argv)
    r1.pop("timings")
    r2.pop("timings")
    assert r1 == r2


def _suite(data, checks):
    doc = {"format": "ssx/1", "kind": "suite", "body": {"checks": checks}}
    p = data / "mine.suite"
    p.write_text(dumps(doc), encoding="utf-8")
    return p


def test_suite_reports_the_wrong_expectation_only(data):
    good = {"name": "h1_z2", "argv": ["h1", "--base", "s1.ssx", "--group", "z2.sgx"],
            "expect": {"exit": 0, "outputs": {"classes": 2}}}
    bad = {"name": "h1_z3", "argv": ["h1", "--base", "s1.ssx", "--group", "z3.sgx"],
           "expect": {"exit": 0, "outputs": {"classes": 2}}}
    code, rep = run_command(["verify", str(_suite(data, [good, bad]))])
    assert code == 1
    assert [c["ok"] for c in rep["checks"]] == [True, False]
    assert rep["results"][1]["mismatches"] == [{"field": "classes", "expected": 2,
                                                "actual": 3}]


def test_suite_with_missing_file_exits_2(data):
    bad = {"name": "gone", "argv": ["homology", "--input", "nowhere.ssx"], "expect": {}}
    code, rep = run_command(["verify", str(_suite(data, [bad]))])
    assert code == 2
    assert "nowhere.ssx" in rep["error"]["message"]


def test_missing_input_exits_2(data):
    code, rep = run_command(["homology", "--input", str(data / "absent.ssx")])
    assert code == 2 and rep["error"]["type"] == "SchemaError"


def test_usage_errors_exit_2():
    assert run_command(["no-such-command"])[0] == 2
    assert run_command(["wbar", "--bound", "x"])[0] == 2
    assert main(["homology", "--policy", "sometimes"]) == 2
