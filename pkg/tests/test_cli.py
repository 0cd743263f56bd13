import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES, ROOT
from superdeform.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["check", FIXTURES / "p1-split.atlas"], 0),
        (["check", FIXTURES / "p1-three-chart.atlas"], 0),
        (["check", "--superconformal", FIXTURES / "wronskian-counterexample.atlas"], 0),
        (["check", FIXTURES / "wronskian-counterexample.atlas"], 1),
        (["ks", FIXTURES / "p1-construction.atlas"], 0),
        (["obstruction", FIXTURES / "p1-construction.atlas"], 0),
        (["split", FIXTURES / "p1-construction-coboundary.atlas"], 0),
        (["split", "--half-twist", "-2", FIXTURES / "p1-three-chart.atlas"], 2),
        (["cech-solve", "--twist", "-2", FIXTURES / "xinv.cochain"], 1),
        (["cech-solve", FIXTURES / "laurent.cochain"], 0),
        (["verify-identities", "--suite", "sec-4.2.2"], 0),
        (["verify-identities", "--suite", "sec-4.2.2", "--drop-group", "commutation"], 1),
        (["verify-identities", "--suite", "nope"], 2),
        (["check", FIXTURES / "missing.atlas"], 2),
        (["frobnicate"], 2),
        ([], 2),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_cech_witness_reported():
    code, out, _ = call("cech-solve", "--twist", "-2", FIXTURES / "xinv.cochain")
    assert code == 1
    assert "witness: 1/x" in out and "x^-1: 1" in out


def test_exit_one_carries_a_residual(tmp_path):
    for argv in (
        ["check", FIXTURES / "wronskian-counterexample.atlas"],
        ["cech-solve", "--twist", "-2", FIXTURES / "xinv.cochain"],
        ["verify-identities", "--suite", "sec-4.2.2", "--drop-group", "commutation"],
    ):
        path = tmp_path / "r.json"
        code, _, _ = call(*argv, "--json", path)
        report = json.loads(path.read_text())
        assert code == 1 and not report["pass"]
        assert any(not e["pass"] and e["residual"] != "0" for e in report["entries"])


def test_json_is_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        call("--json", p, "check", FIXTURES / "p1-three-chart.atlas")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_build_then_check(tmp_path):
    out = tmp_path / "built.atlas"
    assert call("build", "construction", FIXTURES / "p1-directives.atlas", "--out", out)[0] == 0
    assert call("check", out)[0] == 0
    code, _, err = call("build", "twist", FIXTURES / "p1-split.atlas")
    assert code == 2 and "twist" in err


def test_split_then_verify(tmp_path):
    s = tmp_path / "lambda.split"
    atlas = FIXTURES / "p1-construction-coboundary.atlas"
    assert call("split", atlas, "--out", s)[0] == 0
    assert call("verify-splitting", atlas, s)[0] == 0
    # the same map does not split a different atlas
    assert call("verify-splitting", FIXTURES / "p1-construction.atlas", s)[0] == 1


def test_split_refusal_reports_witness(tmp_path):
    # Theta = 1/x + 3x: psi1 = 1/(2x) + 3x/2, and x^-2 (-psi1) hits the O(-2) gap at x^-1
    built = tmp_path / "c.atlas"
    call("build", "construction", FIXTURES / "p1-directives.atlas", "--out", built)
    code, out, _ = call("split", "--half-twist", "-2", built)
    assert code == 1
    assert "model = O(-2)" in out and "h1 coordinates = -3/2" in out


def test_genus_one_warning():
    code, out, _ = call("split", FIXTURES / "genus1-like.atlas")
    assert out.startswith("warning: genus 1")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superdeform", "check", str(FIXTURES / "p1-split.atlas")],
        capture_output=True, text=True, cwd=ROOT,
    )
    assert proc.returncode == 0 and "PASS" in proc.stdout
