import csv
import json
import math
import subprocess
import sys

import pytest

from monobasis import serialization as ser
from monobasis.cli import main
from monobasis.exact_algebra import ComplexRat, Poly3, SpinorPoly, to_quat, zbar_poly
from monobasis.quaternion_appell import appell_recurrence, phi_normalize
from monobasis.spinor_gt import hat_basis


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_poly(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(ser.dumps(ser.encode(obj)))
    return str(path)


# --- basis ----------------------------------------------------------------------------

def test_basis_appell_n2(capsys):
    code, out, _ = run(capsys, "basis", "--kind", "appell", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 2 and [e["l"] for e in doc["elements"]] == [0, 1, 2]
    for e in doc["elements"]:
        assert ser.decode(e["poly"]) == appell_recurrence(2, e["l"])


def test_basis_spinor_k0(capsys):
    code, out, _ = run(capsys, "basis", "--kind", "spinor", "--k", "0", "--sign", "-")
    doc = json.loads(out)
    assert code == 0 and doc["sign"] == "-" and doc["route"] == "closed-form"
    elems = [ser.decode(e["poly"]) for e in doc["elements"]]
    assert elems == [SpinorPoly.const(1, 0), SpinorPoly.const(0, 1)]
    assert [e["weight"] for e in doc["elements"]] == ["1/2", "-1/2"]


def test_basis_hat_k1_starts_with_zbar(capsys):
    code, out, _ = run(capsys, "basis", "--kind", "hat", "--k", "1", "--sign", "-")
    elems = [ser.decode(e["poly"]) for e in json.loads(out)["elements"]]
    zero = Poly3.zero("x").map_coeffs(ComplexRat.coerce)
    assert code == 0 and elems[0] == SpinorPoly(zbar_poly("x"), zero)
    assert elems == hat_basis(1, "-").elements


def test_basis_routes_agree_except_for_route_field(capsys):
    outs = []
    for route in ("recurrence", "embedding", "explicit"):
        _, out, _ = run(capsys, "basis", "--kind", "g", "--k", "3", "--route", route)
        doc = json.loads(out)
        doc.pop("route")
        outs.append(doc)
    assert outs[0] == outs[1] == outs[2]
    _, a, _ = run(capsys, "basis", "--kind", "spinor", "--k", "3", "--route", "ck")
    _, b, _ = run(capsys, "basis", "--kind", "spinor", "--k", "3")
    assert json.loads(a)["elements"] == json.loads(b)["elements"]


def test_basis_writes_file_and_is_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["basis", "--kind", "h", "--k", "3", "--out", str(p1)]) == 0
    assert main(["basis", "--kind", "h", "--k", "3", "--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["basis", "--kind", "hat", "--k", "2", "--route", "ck"],
    ["basis", "--kind", "g", "--k", "-1"],
    ["basis", "--kind", "g"],
    ["basis", "--kind", "g", "--k", "17"],
    ["basis", "--kind", "g", "--k", "1", "--out", "/nonexistent/dir/x.json"],
    ["verify", "--suite", "appell", "--tol", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("monobasis: error:")


def test_argparse_errors_exit_2(capsys):
    for argv in (["basis", "--kind", "octonion", "--k", "1"], ["nope"], ["gram", "--kind", "g", "--k", "1", "--sign", "x"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    capsys.readouterr()


def test_max_degree_env(capsys, monkeypatch):
    monkeypatch.setenv("MONOBASIS_MAX_DEGREE", "2")
    assert run(capsys, "basis", "--kind", "g", "--k", "3")[0] == 2
    assert run(capsys, "basis", "--kind", "g", "--k", "2")[0] == 0
    monkeypatch.setenv("MONOBASIS_MAX_DEGREE", "lots")
    assert run(capsys, "basis", "--kind", "g", "--k", "0")[0] == 2


# --- verify ----------------------------------------------------------------------------

def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identity", "--max-k", "6")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and all(c["status"] == "pass" for c in doc["checks"])


def test_verify_orthogonality_ball(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "orthogonality", "--max-k", "6", "--product", "ball")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("suite", ["appell", "eigen", "kernel", "bridge"])
def test_verify_other_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--max-k", "4")
    assert code == 0 and json.loads(out)["ok"]


def test_verify_legendre_with_points(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    with open(pts, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "theta", "phi"])
        for i in range(50):
            w.writerow([0.3 + 0.01 * i, math.pi * (i + 0.5) / 50, 2 * math.pi * i / 50 - math.pi])
    code, out, _ = run(capsys, "verify", "--suite", "legendre", "--max-k", "5", "--tol", "1e-9", "--points", str(pts))
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["tol"] == 1e-9


def test_verify_failure_exits_1(capsys, tmp_path):
    # a tolerance below double rounding makes the float cross-check fail
    code, out, _ = run(capsys, "verify", "--suite", "legendre", "--max-k", "6", "--tol", "1e-300")
    doc = json.loads(out)
    assert code == 1 and not doc["ok"] and any(c["status"] == "fail" for c in doc["checks"])


def test_verify_bad_points_file(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n")
    assert run(capsys, "verify", "--suite", "legendre", "--points", str(bad))[0] == 2
    assert run(capsys, "verify", "--suite", "legendre", "--points", str(tmp_path / "missing.csv"))[0] == 2


# --- expand ----------------------------------------------------------------------------

def test_expand_taylor_q_of_appell(capsys, tmp_path):
    path = write_poly(tmp_path, appell_recurrence(2, 1))
    code, out, _ = run(capsys, "expand", "--kind", "taylor-q", path)
    doc = json.loads(out)
    assert code == 0
    assert doc == {"taylor_q": [{"n": 2, "l": 1, "t": {"q0": ["1", "1"], "q1": ["0", "1"], "q2": ["0", "1"], "q3": ["0", "1"]}}]}


def test_expand_zero(capsys, tmp_path):
    path = write_poly(tmp_path, Poly3.zero("y"))
    for kind, key in (("taylor-q", "taylor_q"), ("fourier", "fourier")):
        code, out, _ = run(capsys, "expand", "--kind", kind, path)
        assert code == 0 and json.loads(out)[key] == []


def test_expand_non_monogenic_reports_residual(capsys, tmp_path):
    path = write_poly(tmp_path, to_quat(Poly3.var(0, "y")))
    code, out, err = run(capsys, "expand", "--kind", "taylor-q", path)
    assert code == 1 and out == ""
    doc = json.loads(err)
    assert ser.decode(doc["residual"]) == to_quat(Poly3.const(1, "y"))


def test_expand_taylor_s(capsys, tmp_path):
    h = hat_basis(2, "+").elements[3]
    path = write_poly(tmp_path, h)
    code, out, _ = run(capsys, "expand", "--kind", "taylor-s", "--sign", "+", path)
    doc = json.loads(out)
    assert code == 0 and doc["sign"] == "+"
    assert [(t["k"], t["j"]) for t in doc["taylor_s"]] == [(2, 3)]


def test_expand_fourier_of_phi(capsys, tmp_path):
    # phi has float scale; feed the exact A and check alpha against the scale
    path = write_poly(tmp_path, appell_recurrence(3, 2))
    code, out, _ = run(capsys, "expand", "--kind", "fourier", path)
    [entry] = json.loads(out)["fourier"]
    assert code == 0 and (entry["n"], entry["l"]) == (3, 2)
    assert entry["alpha"][0] == pytest.approx(1 / phi_normalize(3, 2).scale, rel=1e-12)


@pytest.mark.parametrize("content", ["{not json", '{"terms": [{"e": [1]}]}', '{"vars": "q", "terms": []}'])
def test_expand_parse_errors(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(capsys, "expand", "--kind", "taylor-q", str(path))[0] == 2


def test_expand_kind_mismatch(capsys, tmp_path):
    spin = write_poly(tmp_path, SpinorPoly.const(1, 0), "s.json")
    quat = write_poly(tmp_path, appell_recurrence(1, 0), "q.json")
    assert run(capsys, "expand", "--kind", "taylor-q", spin)[0] == 2
    assert run(capsys, "expand", "--kind", "taylor-s", quat)[0] == 2


# --- gram --------------------------------------------------------------------------------

def test_gram_csv_and_json(capsys):
    code, out, _ = run(capsys, "gram", "--kind", "g", "--k", "2")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and len(rows) == 4
    assert all(rows[i][j].startswith("(0/1,0/1,0/1,0/1)") for i in range(1, 4) for j in range(1, 4) if i != j)
    code, out, _ = run(capsys, "gram", "--kind", "spinor", "--k", "3", "--format", "json", "--product", "fischer")
    assert code == 0 and json.loads(out)["diagonal"] is True


# --- process entry point -------------------------------------------------------------------

def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monobasis", "basis", "--kind", "appell", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["elements"]) == 2
    proc = subprocess.run([sys.executable, "-m", "monobasis", "basis", "--kind", "g", "--k", "99"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
