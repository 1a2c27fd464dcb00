import json
import subprocess
import sys
from pathlib import Path

import pytest

from wpfol.catalog import FAMILIES, delta, eta
from wpfol.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_basis(capsys):
    code, rep = run(capsys, "basis", "--weights", "1,1,1", "--degree", "2")
    assert code == 0 and rep["results"]["dimension"] == 3 and rep["exact"] is True
    code, rep = run(capsys, "basis", "--weights", "1,1,3", "--degree", "2")
    assert rep["results"]["dimension"] == 1


def test_check(capsys):
    code, rep = run(capsys, "check", "--weights", "1,1,2", "--form", "x1*dx0 - x0*dx1", "--curve", "x1 - 3*x0")
    assert code == 0 and rep["results"]["invariant"] and rep["results"]["degree"] == 2
    code, rep = run(capsys, "check", "--weights", "1,1,2", "--form", "x1*dx0 - x0*dx1", "--curve", "x2")
    assert code == 0 and not rep["results"]["invariant"]


def test_radial_error_reports_residual(capsys):
    code, rep = run(capsys, "check", "--weights", "1,1,2", "--form", "dx0", "--curve", "x0")
    assert code == 1 and rep["error"]["code"] == "invalid_form"
    assert rep["error"]["residual"] == "x0"


def test_syntax_error(capsys):
    code, rep = run(capsys, "sing", "--weights", "1,1,1", "--form", "x1*dx0 - * x0*dx1")
    assert code == 1 and rep["error"]["code"] == "parse_error"


def test_delta_from_file(capsys, tmp_path):
    f = tmp_path / "delta_k2.frm"
    f.write_text(str(delta(2).omega) + "\n", encoding="utf-8")
    code, rep = run(capsys, "sing", "--weights", "1,1,2", "--form", f"@{f}")
    assert code == 0 and rep["results"]["complete"]
    assert set(rep["results"]["points"]) == {"[1:0:0]", "[0:1:0]", "[1:1:1]"}
    code, rep = run(capsys, "multiplicity", "--weights", "1,1,2", "--form", f"@{f}", "--vertex", "2")
    assert rep["results"]["r"] == 1
    code, rep = run(capsys, "riccati", "--weights", "1,1,2", "--form", f"@{f}")
    assert code == 0 and rep["results"]["riccati"] is False


def test_certify_and_verify(capsys, tmp_path):
    f = tmp_path / "delta_k2.frm"
    f.write_text(str(delta(2).omega), encoding="utf-8")
    out = tmp_path / "certs.json"
    code, rep = run(capsys, "certify", "--weights", "1,1,2", "--form", f"@{f}", "--point", "1:1:1",
                    "--max-degree", "1", "--out", str(out))
    assert code == 0 and len(rep["results"]["certificates"]) == 1
    code, rep = run(capsys, "verify", "--certificate", str(out))
    assert code == 0 and rep["results"]["verified"] == [True]
    certs = json.loads(out.read_text())
    certs[0]["determinant"] = {"re": "3", "im": "0"}
    out.write_text(json.dumps(certs))
    code, rep = run(capsys, "verify", "--certificate", str(out))
    assert code == 1 and rep["results"]["verified"] == [False]


def test_certify_inconclusive_exit_code(capsys):
    code, rep = run(capsys, "certify", "--weights", "1,1,1", "--form", "x1*dx0 - x0*dx1", "--point", "1:2:3",
                    "--max-degree", "1")
    assert code == 2 and rep["status"] == "inconclusive"


def test_eta_certificate(capsys):
    code, rep = run(capsys, "certify", "--weights", "1,1,2", "--form", str(eta((1, 1, 2), 2).omega),
                    "--point", "0:0:1", "--max-degree", "1")
    assert code == 0
    assert rep["results"]["certificates"][0]["determinant"] == {"re": "-1/8", "im": "0"}


def test_milnor(capsys):
    code, rep = run(capsys, "milnor", "--weights", "1,1,2", "--form", "x1*x2*dx0 + x0*x2*dx1 - x0*x1*dx2")
    assert code == 0
    res = rep["results"]
    assert res["complete"] and res["consistent"]


def test_bounds(capsys):
    code, rep = run(capsys, "bounds", "--weights", "1,1,2")
    assert (rep["results"]["general"], rep["results"]["special"]) == (7, 5)
    code, rep = run(capsys, "bounds", "--weights", "1,1,1")
    assert rep["results"]["general"] == 4


def test_frobenius(capsys):
    code, rep = run(capsys, "frobenius", "--a", "3", "--b", "5", "--n", "8")
    assert code == 0 and rep["results"]["g"] == 7 and rep["results"]["representation"] == [1, 1]
    code, rep = run(capsys, "frobenius", "--a", "4", "--b", "6")
    assert code == 1 and rep["error"]["code"] == "value_error"


def test_hirzebruch(capsys):
    code, rep = run(capsys, "hirzebruch", "--k", "2", "--a", "8", "--b", "2")
    assert rep["results"]["forced_curve"]["branch"] == "fiber"
    assert rep["results"]["intersections"]["N^2"] == 24
    code, rep = run(capsys, "hirzebruch", "--k", "2", "--a", "9", "--b", "3")
    assert rep["results"]["generic_bound_satisfied"]


def test_reduce(capsys):
    code, rep = run(capsys, "reduce", "--weights", "2,4,3")
    assert code == 0 and rep["results"]


def test_example_side_condition(capsys):
    code, rep = run(capsys, "example", "--family", "log-1", "--weights", "1,2,3", "--param", "a=1",
                    "--param", "b=1", "--param", "c=-1")
    assert code == 1 and rep["error"]["code"] == "side_condition"


def test_example_with_gaussian_parameter(capsys):
    code, rep = run(capsys, "example", "--family", "eta", "--param", "a=2*i")
    assert code == 0 and rep["results"]["degree"] == 6


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_example_golden(capsys, family):
    code, _ = run(capsys, "example", "--family", family)
    assert code == 0
    main(["example", "--family", family])
    text = capsys.readouterr().out
    assert text == (GOLDEN / f"{family}.json").read_text(encoding="utf-8")


def test_reports_reparse(capsys):
    code, rep = run(capsys, "example", "--family", "delta")
    form = rep["results"]["form"]
    code, again = run(capsys, "multiplicity", "--weights", "1,1,2", "--form", form, "--vertex", "0")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wpfol", "frobenius", "--a", "2", "--b", "9"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["g"] == 7
