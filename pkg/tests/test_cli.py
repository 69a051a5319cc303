import io
import json
import subprocess
import sys

import pytest

from stabmeans.analysis import report_from_dict
from stabmeans.cli import run
from stabmeans.render import coeffs_from_dict, render


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_expand_seiffert1():
    code, out, _ = call("expand", "--mean", "seiffert1", "--order", "3", "--format", "text")
    assert code == 0
    assert out.strip() == "1, -1/6, -17/360, -367/15120"


def test_stable_geometric_list():
    code, out, _ = call("stable", "--a1", "-1/2", "--order", "5")
    assert code == 0
    assert out.strip() == "1, -1/2, -1/8, -1/16, -5/128, -7/256"


def test_substab_json():
    code, out, _ = call("substab", "--target", "seiffert1", "--order", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert {s["q"] for s in doc["solutions"]} == {"1 - 1/2*sqrt(2)", "1 + 1/2*sqrt(2)"}
    assert {r["value"] for r in doc["residuals"]} == {"1/1134"}


def test_substab_text_verdict_line():
    code, out, _ = call("substab", "--target", "seiffert1")
    assert "P - R(B_p,P,B_q) ≻ 0 (first nonzero: 1/1134 at order 3)" in out
    code, out, _ = call("substab", "--target", "seiffert2")
    assert "|10q - 25| >= sqrt(185)" in out


def test_latex_stable():
    code, out, _ = call("stable", "--a1", "symbolic", "--order", "2", "--format", "latex")
    assert code == 0
    assert "a_{2} = \\tfrac{1}{6} a_1(1+a_1)(1-4a_1)" in out


def test_render_empty_json():
    assert json.loads(render({}, "json")) == {}


@pytest.mark.parametrize("argv", [
    ["expand", "--mean", "ns", "--order", "4"],
    ["expand", "--mean", "gini", "--order", "2"],
    ["stable", "--a1", "symbolic", "--order", "3"],
    ["stabilizable", "--k", "arithmetic", "--m", "geometric", "--order", "4"],
    ["stabilizable", "--k", "stable:symbolic", "--m", "stable:symbolic", "--order", "2"],
    ["stabilized", "--k", "A", "--n", "G", "--order", "4"],
    ["resultant", "--k", "symbolic", "--n", "symbolic", "--m", "symbolic", "--order", "2"],
])
def test_coefficient_json_roundtrip(argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    again = coeffs_from_dict(doc)
    assert json.loads(render(again, "json"))["coefficients"] == doc["coefficients"]


@pytest.mark.parametrize("argv", [
    ["check-stability", "--mean", "stolarsky"],
    ["disprove", "--target", "seiffert1"],
    ["disprove", "--target", "L"],
    ["substab", "--target", "ns"],
    ["compare", "--target", "seiffert1", "--mean", "ns"],
    ["compare", "--target", "seiffert1", "--k", "power:2", "--m", "power:0"],
])
def test_report_json_roundtrip(argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    back = report_from_dict(doc)
    assert json.loads(render(back, "json")) == doc


@pytest.mark.parametrize("argv", [
    ["check-stability", "--mean", "seiffert1", "--order", "4"],
    ["verify", "--relation", "stabilizable", "--k", "A", "--m", "G", "--n", "L",
     "--precision", "128"],
    ["compound", "--k", "A", "--n", "G", "--s", "1", "--t", "2"],
])
def test_dict_json(argv):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0
    json.loads(out)


def test_verify_and_compound_values():
    _, out, _ = call("verify", "--relation", "stabilized", "--k", "A", "--n", "H", "--m", "G",
                     "--format", "json")
    assert float(json.loads(out)["max_relative_residual"]) < 1e-25
    _, out, _ = call("compound", "--k", "A", "--n", "G", "--format", "json")
    assert json.loads(out)["value"].startswith("1.456791031046906869")


def test_determinism():
    argv = ["substab", "--target", "ns", "--format", "json"]
    assert call(*argv) == call(*argv)


@pytest.mark.parametrize("argv", [
    [],
    ["nosuch"],
    ["expand"],
    ["expand", "--mean", "nosuch:1"],
    ["expand", "--mean", "power:1.5"],
    ["stable", "--a1", "x/y"],
    ["expand", "--mean", "ns", "--format", "yaml"],
    ["expand", "--mean", "ns", "--order", "-1"],
    ["stabilizable", "--k", "A"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2 and not out and err


def test_domain_error():
    code, out, err = call("disprove", "--target", "seiffert1", "--order", "2", "--format", "json")
    assert code == 1 and not out
    assert json.loads(err)["error"] == "OrderTooLow"
    code, _, err = call("check-stability", "--mean", "power:2", "--order", "1")
    assert code == 1 and "OrderTooLow" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stabmeans", "expand", "--mean", "T"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1, 1/3, -4/45, 44/945"
