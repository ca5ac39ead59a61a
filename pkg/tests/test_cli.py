import io
import json
import subprocess
import sys

import pytest

from derivbench.cli import main
from derivbench.dsl import parse_polynomial, parse_spec
from helpers import FIXTURES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def kv(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


COR29 = FIXTURES / "cor29.deriv"
UNIT_IMAGE = FIXTURES / "unit_image.deriv"


def test_check_star_matrix():
    code, out, _ = run("check-star", "--matrix", "2 1; 3 0")
    assert code == 0 and kv(out)["result.holds"] == "true"
    code, out, _ = run("check-star", "--matrix", "1 0; 0 1")
    assert code == 1 and kv(out)["result.witness"] == "1 0"


def test_image_membership_witness_reparses():
    code, out, _ = run("image-membership", "--spec", UNIT_IMAGE, "--target", "1", "--bound", "2")
    fields = kv(out)
    assert code == 0
    assert fields["result.verdict.witness"] == "-1/2*x^2 + y"
    assert parse_polynomial(fields["result.verdict.witness"], ["x", "y"]) is not None


def test_infeasible_image_exits_one():
    code, out, _ = run("image-membership", "--spec", COR29, "--base", "--target", "x2", "--bound", "4")
    assert code == 1 and kv(out)["result.verdict.status"] == "InfeasibleUpTo"


def test_no_units_modes():
    code, out, _ = run("no-units", "--spec", COR29, "--var", "x2", "--bound", "6")
    assert code == 0 and kv(out)["result.mode"] == "base-image"
    code, out, _ = run("no-units", "--spec", UNIT_IMAGE, "--var", "x", "--bound", "2")
    assert code == 1 and kv(out)["result.verdict.g"] == "1"
    code, out, _ = run("no-units", "--spec", COR29, "--var", "x3", "--bound", "3")
    assert code == 0 and kv(out)["result.mode"] == "extension-kernel"


def test_shamsuddin_and_commute():
    code, out, _ = run("shamsuddin", "--spec", FIXTURES / "dx.deriv", "--b", "1", "--bound", "4")
    assert code == 1 and kv(out)["result.verdict.witness"] == "x"
    code, out, _ = run("commute", "--spec", COR29, "--map", "x1, x2, x3 + 5")
    assert code == 0
    code, out, _ = run("commute", "--spec", COR29, "--map", "x1, x2, 2*x3")
    assert code == 1 and kv(out)["result.difference"] == "x2"


def test_isotropy_search():
    code, out, _ = run("isotropy-search", "--spec", COR29)
    assert code == 0 and kv(out)["result.maps.count"] == "3"
    code, out, _ = run("isotropy-search", "--spec", FIXTURES / "linear.deriv", "--tail-degree", "1")
    assert code == 1


def test_classify_family():
    code, out, _ = run("classify", "--family", "cor29", "--m1", "3", "--m2", "2", "--n", "3", "--links", "x2")
    fields = kv(out)
    assert code == 0
    assert fields["result.isotropy_conclusion"] == "TranslationsInXn"
    assert fields["result.simplicity_conclusion"] == "Simple"


def test_classify_linear_spec():
    code, out, _ = run("classify", "--spec", FIXTURES / "linear.deriv")
    assert code == 1 and kv(out)["result.isotropy_conclusion"] == "Unknown"


def test_family_output_round_trip(tmp_path):
    target = tmp_path / "f.deriv"
    code, _, _ = run("family", "--family", "cor212", "--m", "3", "--g", "1 + x1^2", "--n", "4",
                     "--links", "x2; x3^2", "--output", target)
    assert code == 0
    spec = parse_spec(target.read_text())
    assert spec.names == ("x1", "x2", "x3", "x4")
    code, out, _ = run("classify", "--spec", target)
    assert code == 0


@pytest.mark.parametrize("argv,message", [
    (["family", "--family", "cor29", "--m1", "4", "--m2", "2", "--n", "3", "--links", "x2"], "m2 does not divide m1"),
    (["image-membership", "--spec", UNIT_IMAGE, "--target", "z"], "unknown variable"),
    (["derive", "--spec", FIXTURES / "missing.deriv"], "cannot read"),
    (["check-star", "--matrix", "1 2; 3"], "bad matrix"),
    (["commute", "--spec", COR29, "--map", "x1, x2"], "needs 3 images"),
    (["no-units", "--spec", COR29, "--var", "q"], "unknown variable"),
    (["classify", "--spec", FIXTURES / "relaxed.deriv"], "relaxed"),
    (["classify", "--family", "cor29"], "--m1 is required"),
])
def test_input_errors_exit_two(argv, message):
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert message in err


def test_usage_error_exits_two(capsys):
    assert run("frobnicate")[0] == 2


def test_json_output():
    code, out, _ = run("check-star", "--matrix", "2 1; 3 0", "--format", "json")
    doc = json.loads(out)
    assert doc["result"]["holds"] is True and doc["command"] == "check-star"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "derivbench", "check-star", "--matrix", "0 0; 0 0"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "result.witness: 1 0" in proc.stdout
