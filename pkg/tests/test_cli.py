import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from hypercf.cli import EXAMPLES, main

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "docs" / "schemas"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def test_expand_rational_text(capsys):
    code, out, _ = run(capsys, "expand-rational", "--p", "13", "--num", "(T^2-1)^4", "--den", "2*T^7+2*T^5+T^3-T")
    assert code == 0
    assert out.strip() == "[7*T, 10*T, 5*T, 12*T, 9*T, 11*T, T, 5*T]"


def test_expand_rational_json_schema(capsys):
    code, out, _ = run(capsys, "expand-rational", "--json", "--p", "13", "--num", "(T^2+12)*(T^2+12)*(T^2+12)*(T^2+12)",
                       "--den", "2*T^7+2*T^5+T^3-T")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("expansion.schema.json"))
    assert code == 0 and doc["round_trip"] and doc["certified"] == 8


def test_expand_root_json(capsys):
    code, out, _ = run(capsys, "expand-root", "--json", "--p", "7", "--poly-x", "4*X^4+6*T*X^3+X^2+1",
                       "--seed-poly", "2*T", "--terms", "400")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("expansion.schema.json"))
    assert code == 0 and doc["quotients"][:3] == ["2*T", "6*T", "6*T"]


def test_extension_field_flag(capsys):
    code, out, _ = run(capsys, "expand-root", "--p", "2", "--ext-modulus", "u^2+u+1",
                       "--poly-x", "T^3*X^5+(u*T^4+T^2+1)*X^4+1", "--seed-poly", "u*T", "--terms", "200")
    assert code == 0 and "(u)*T, T, T, T, (u)*T" in out


def test_quad_expand(capsys):
    code, out, _ = run(capsys, "quad-expand", "--json", "--p", "11", "--A", "6*T^2+1", "--B", "5*T^3+9*T",
                       "--C", "9*T^2+10", "--seed-poly", "T")
    doc = json.loads(out)
    assert code == 0 and doc["period"] == ["T", "2*T", "3*T"] and doc["equation_proportional"]


def test_rqe_verify_and_pattern(capsys):
    code, out, _ = run(capsys, "rqe-verify", "--json", "--p", "7")
    assert code == 0 and json.loads(out)["divides"]
    code, out, _ = run(capsys, "rqe-pattern", "--json", "--p", "7", "--quotients", "60")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("pattern_report.schema.json"))
    assert code == 0 and doc["ok"]


def test_scan_json(capsys):
    code, out, err = run(capsys, "scan", "--json", "--pmax", "31")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("scan_report.schema.json"))
    assert code == 0 and doc["all_divide"] and [r["p"] for r in doc["results"]] == [7, 13, 19, 31]
    assert "total" in err  # progress goes to stderr


def test_multiple_solver_cli(capsys):
    code, out, _ = run(capsys, "theorem1", "--json", "--p", "7", "--A=-(2T)^2/12", "--B", "T^2+3", "--C", "2T")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and doc["r"] == 7


def test_multiple_hypothesis_violation_is_usage_error(capsys):
    code, _, err = run(capsys, "theorem1", "--p", "7", "--A", "1", "--B", "T", "--C", "1")
    assert code == 2 and "12A" in err


def test_examples_only(capsys):
    code, out, _ = run(capsys, "examples", "--json", "--only", "f13-rational")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("examples_report.schema.json"))
    assert code == 0 and doc["total"] == 1 and doc["results"][0]["id"] == "f13-rational"


@pytest.mark.parametrize("name", sorted(set(EXAMPLES) - {"rqe-growth-13", "mills-robbins"}))
def test_each_golden_example(name, capsys):
    code, out, _ = run(capsys, "examples", "--only", name)
    assert code == 0, out


def test_examples_full_run(capsys):
    code, out, _ = run(capsys, "examples", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("examples_report.schema.json"))
    failing = [r["id"] for r in doc["results"] if not r["pass"]]
    assert code == 0, f"failing examples: {failing}"


def test_json_is_deterministic(capsys):
    argv = ["expand-root", "--json", "--p", "13", "--poly-x", "9/32*X^4-T*X^3+X^2-8/27", "--seed-poly", "5*T", "--terms", "300"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    _, a, _ = run(capsys, "scan", "--json", "--pmax", "19")
    _, b, _ = run(capsys, "scan", "--json", "--pmax", "19", "--workers", "2")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["scan", "--bogus"],
        ["expand-rational", "--p", "12", "--num", "T"],
        ["expand-rational", "--p", "7"],
        ["expand-rational", "--p", "7", "--num", "T", "--den", "0"],
        ["expand-rational", "--p", "7", "--num", "T+(", "--den", "1"],
        ["expand-rational", "--p", "5", "--ext-modulus", "u^2+1", "--num", "T"],
        ["expand-root", "--p", "7", "--poly-x", "X^2", "--seed-poly", "T", "--terms", "-3"],
        ["rqe-verify", "--p", "11"],
        ["examples", "--only", "no-such-id"],
        ["mills-robbins", "--precision", "10"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "expand-rational", "--p", "7", "--num", "(T^2-1", "--den", "1")
    assert code == 2 and "line 1, column 7" in err


def test_verification_failure_exit_1(capsys):
    code, out, _ = run(capsys, "mills-robbins", "--json", "--precision", "60")
    assert code == 1 and json.loads(out)["residual_zero"] is False


@settings(max_examples=60)
@given(st.text(alphabet="TXu0123456789+-*/^() #", max_size=12))
def test_malformed_polynomials_never_crash(text):
    code = main(["expand-rational", "--p", "7", "--num", text or "(", "--den", "1"])
    assert code in (0, 2)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hypercf", "examples", "--only", "f4-mul"], capture_output=True, text=True)
    assert res.returncode == 0 and "PASS  f4-mul" in res.stdout
