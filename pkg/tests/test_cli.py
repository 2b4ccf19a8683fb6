import json
from pathlib import Path

import pytest

from emrings.analysis import PropertyReport
from emrings.cli import main, parse_poly_literal
from emrings.poly import poly_str
from emrings.presets import preset_names

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_presets(capsys):
    code, out, _ = run(capsys, "list-presets")
    assert code == 0
    for name in preset_names():
        assert name in out


def test_check_em_false_on_e1(capsys):
    code, out, _ = run(capsys, "check", "--ring", "preset:e1", "--property", "em",
                       "--format", "json", "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "false"
    assert doc["witness"]["coefficients"] == [2, 4]
    assert doc["millis"] is None
    # JSON reports round-trip into PropertyReport values
    rep = PropertyReport.from_dict(doc)
    assert rep.verdict == "false"


def test_check_em_graded_true_on_e1(capsys):
    code, out, _ = run(capsys, "check", "--ring", "e1", "--grading", "canonical",
                       "--property", "em-graded", "--format", "json", "--no-timing")
    assert code == 0
    assert json.loads(out)["verdict"] == "true"


def test_check_other_properties(capsys):
    for prop, expected in [
        ("crossed-product", "false"),
        ("grading-valid", "true"),
        ("t2-hypotheses", "true"),
        ("t8-condition", "false"),
        ("t10-condition", "false"),
        ("armendariz", "false"),
        ("armendariz-graded", "true_up_to_bounds"),
        ("bezout-graded", "false"),
    ]:
        code, out, _ = run(capsys, "check", "--ring", "e1", "--property", prop,
                           "--format", "json", "--no-timing")
        assert code == 0, prop
        assert json.loads(out)["verdict"] == expected, prop


def test_find_content_witness(capsys):
    code, out, _ = run(capsys, "find-content", "--ring", "z4", "--poly", "[2,2]",
                       "--format", "json", "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["witness"]["c"] == 2
    assert doc["witness"]["g"] == [1, 1, 2]


def test_find_content_none(capsys):
    code, out, _ = run(capsys, "find-content", "--ring", "e1", "--poly", "2+Y*x",
                       "--format", "json", "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["witness"] is None
    assert doc["certificate"]["candidates_exhausted"] == 7


def test_find_content_homogeneous_flag(capsys):
    code, out, _ = run(capsys, "find-content", "--ring", "e1", "--poly", "Y+3Y*x",
                       "--report-homogeneous-content", "--format", "json", "--no-timing")
    assert code == 0
    assert json.loads(out)["witness"]["homogeneous_c"] == 4


def test_find_content_regular_poly_is_usage_error(capsys):
    code, _, err = run(capsys, "find-content", "--ring", "z4", "--poly", "[1,2]")
    assert code == 1
    assert "zero-divisor" in err


def test_unknown_preset_is_usage_error(capsys):
    code, _, err = run(capsys, "check", "--ring", "nope", "--property", "em")
    assert code == 1
    assert "unknown preset" in err


def test_ring_file_and_spec_file(tmp_path, capsys, z6):
    ring_doc = tmp_path / "ring.json"
    ring_doc.write_text(json.dumps(z6.to_dict()))
    code, out, _ = run(capsys, "check", "--ring", str(ring_doc), "--property", "em",
                       "--format", "json", "--no-timing")
    assert code == 0 and json.loads(out)["verdict"] == "true"

    spec_doc = tmp_path / "spec.json"
    spec_doc.write_text(json.dumps({"kind": "cyclic", "n": 6}))
    code, out, _ = run(capsys, "describe", "--ring", str(spec_doc), "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 6


def test_bad_ring_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "describe", "--ring", str(bad))
    assert code == 1


def test_poly_literal_parser(e1):
    assert parse_poly_literal(e1, "[2,4]").coeffs == (2, 4)
    assert parse_poly_literal(e1, "2+Y*x").coeffs == (2, 4)
    assert parse_poly_literal(e1, "Y+3Y*x").coeffs == (4, 12)
    assert parse_poly_literal(e1, "2+Y").coeffs == (6,)  # compound label constant
    assert parse_poly_literal(e1, "1+x^2").coeffs == (1, 0, 1)
    assert poly_str(parse_poly_literal(e1, "3Y*x^3")) == "3Y*x^3"
    with pytest.raises(ValueError):
        parse_poly_literal(e1, "5Q+x")
    with pytest.raises(ValueError):
        parse_poly_literal(e1, "[99]")


@pytest.mark.parametrize("name", preset_names())
def test_describe_matches_golden(capsys, name):
    code, out, _ = run(capsys, "describe", "--ring", f"preset:{name}",
                       "--format", "json", "--no-timing")
    assert code == 0
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert json.loads(out) == expected


def test_suite_subcommand(capsys):
    code, out, _ = run(capsys, "suite", "--corpus", "z4,e1", "--format", "json",
                       "--no-timing")
    assert code == 0
    docs = json.loads(out)
    assert all(PropertyReport.from_dict(d).holds for d in docs)
