import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from mr6v.cli import main

WORKED_BOUNDARY = {"north": ["1", "2"], "south": ["1", "1"], "east": ["1", "0"], "west": ["1", "1"]}


def write_params(tmp_path, name, u, v, c="1", boundary=WORKED_BOUNDARY):
    path = tmp_path / name
    path.write_text(json.dumps({"c": c, "u": u, "v": v, "boundary": boundary}))
    return str(path)


@pytest.fixture
def ex1(tmp_path):
    return write_params(tmp_path, "ex1.json", ["1"], ["0"])


@pytest.fixture
def rect(tmp_path):
    return write_params(tmp_path, "rect.json", ["1"], ["0", "3/2"])


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("method", ["block", "bruteforce", "mid-k1", "mid-k2", "mid-k3"])
def test_z_worked_instance(capsys, ex1, method):
    code, out, _ = run(capsys, "z", "--method", method, "--params", ex1)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "5" and lines[1].startswith(f"provenance: {method}:")


def test_z_not_square(capsys, rect):
    code, out, err = run(capsys, "z", "--method", "mid-k3", "--params", rect)
    assert code == 2 and err.startswith("NotSquare")


def test_z_rectangle_methods_agree(capsys, rect):
    values = {run(capsys, "z", "--method", m, "--params", rect)[1].splitlines()[0]
              for m in ("block", "bruteforce", "mid-k1", "mid-k2")}
    assert len(values) == 1


def test_z_preconditions(capsys, tmp_path):
    dup = write_params(tmp_path, "dup.json", ["1", "1"], ["0", "2"])
    assert run(capsys, "z", "--method", "block", "--params", dup)[2].startswith("DistinctnessViolation")
    beta_one = write_params(tmp_path, "b1.json", ["1"], ["0"],
                            boundary={"north": ["1", "1"], "south": ["1", "-1"], "east": ["1", "1"], "west": ["2", "1"]})
    code, _, err = run(capsys, "z", "--method", "block", "--params", beta_one)
    assert code == 2 and err.startswith("BetaOne")
    trace = write_params(tmp_path, "t0.json", ["1"], ["0"],
                         boundary={"north": ["1", "0"], "south": ["1", "0"], "east": ["0", "1"], "west": ["1", "0"]})
    assert run(capsys, "z", "--method", "block", "--params", trace)[2].startswith("TraceZero")
    code, _, err = run(capsys, "z", "--method", "pdwbc", "--k", "3", "--params", write_params(
        tmp_path, "p.json", ["1"], ["0", "2"]))
    assert code == 2 and err.startswith("BadK")


def test_z_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"c": 1, "u": ["1"], "v": ["0"], "boundary": WORKED_BOUNDARY}))
    code, _, err = run(capsys, "z", "--params", str(path))
    assert code == 2 and err.startswith("ParseError")
    path.write_text(json.dumps({"c": "1/0", "u": ["1"], "v": ["0"], "boundary": WORKED_BOUNDARY}))
    assert run(capsys, "z", "--params", str(path))[2].startswith("ParseError")


def test_z_pdwbc(capsys, ex1):
    code, out, _ = run(capsys, "z", "--method", "pdwbc", "--params", ex1)
    assert code == 0 and out.splitlines()[0] == "1"


def test_max_n_cap(capsys, ex1, monkeypatch):
    monkeypatch.setenv("MR6V_MAX_N", "0")
    code, _, err = run(capsys, "z", "--method", "bruteforce", "--params", ex1)
    assert code == 2 and err.startswith("LatticeTooLarge")


def test_z_writes_file(capsys, ex1, tmp_path):
    target = tmp_path / "z.txt"
    assert run(capsys, "z", "--params", ex1, "--out", str(target))[0] == 0
    assert target.read_text().splitlines()[0] == "5"


def test_verify_all_pass_and_deterministic(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "7")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12 and all(line.startswith("PASS") for line in lines)
    names = [line.split()[1].rstrip(":") for line in lines]
    assert names == ["formula-equivalence", "cauchy", "binomial", "symmetric", "vandermonde", "residue",
                     "toda", "derivatives", "pdwbc", "yang-baxter", "rectangle-limit", "semi-infinite"]
    assert run(capsys, "verify", "--seed", "7")[1] == out


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--inject-fault", "binomial")
    failed = [line for line in out.splitlines() if line.startswith("FAIL")]
    assert code == 1 and len(failed) == 1 and failed[0].startswith("FAIL binomial")


def test_identities_subcommand(capsys):
    code, out, _ = run(capsys, "identities")
    assert code == 0 and len(out.splitlines()) == 5


def test_homog(capsys, ex1):
    code, out, _ = run(capsys, "homog", "--params", ex1, "--n", "1", "--m", "1", "--x", "1")
    assert code == 0
    assert out.splitlines()[:2] == ["Z = 5", "Z0 = 2"]
    code, out, _ = run(capsys, "homog", "--params", ex1, "--n", "2", "--m", "3", "--x", "0")
    assert out.splitlines()[:2] == ["Z = 12", "Z0 = 12"]
    assert "E_fluct = 0.0" in out


def test_homog_missing_flags(capsys, ex1):
    assert run(capsys, "homog", "--params", ex1)[0] == 2


def _csv(out):
    rows = list(csv.reader(io.StringIO(out)))
    return rows[0], rows[1:]


def test_thermo_curves_beta_zero(capsys):
    code, out, _ = run(capsys, "thermo-curves", "--beta-tilde", "0", "--grid", "0.1:3:30")
    header, rows = _csv(out)
    assert code == 0 and header == ["x_tilde", "F_tilde", "E_avg", "E_fluct_sq", "S"]
    assert len(rows) == 30 and "\r" not in out
    for row in rows:
        x = mpmath.mpf(row[0])
        assert abs(mpmath.mpf(row[1]) + mpmath.log1p(x)) < 1e-15
        assert len(row[1].lstrip("-").replace(".", "").lstrip("0")) == 17


def test_thermo_curves_domain_gaps(capsys):
    code, out, _ = run(capsys, "thermo-curves", "--beta-tilde", "-1", "--grid", "2:4:21")
    _, rows = _csv(out)
    assert code == 0 and len(rows) == 21
    for row in rows:
        x = float(row[0])
        assert (row[1] == "") == (x >= 3.141592653589793)


def test_thermo_curves_shapes(capsys):
    curves = {}
    for bt in ("-1", "0", "1"):
        _, out, _ = run(capsys, "thermo-curves", "--beta-tilde", bt, "--grid", "0.05:2:40")
        curves[bt] = [float(r[1]) for r in _csv(out)[1]]
    assert curves["-1"] != curves["0"] != curves["1"]
    assert max(abs(curves["-1"][0] - curves["1"][0]), abs(curves["0"][0] - curves["1"][0])) < 1e-2
    assert all(a < b < c for a, b, c in zip(curves["-1"], curves["0"], curves["1"]))


def test_thermo_curves_errors(capsys):
    code, _, err = run(capsys, "thermo-curves", "--beta-tilde", "-1", "--grid", "3.5:6:5")
    assert code == 2 and err.startswith("EmptyGrid")
    assert run(capsys, "thermo-curves", "--beta-tilde", "0", "--grid", "0.1:3:1")[0] == 2
    assert run(capsys, "thermo-curves", "--beta-tilde", "0.5", "--grid", "0.1:3:4")[0] == 2


def test_module_entry_point(ex1):
    proc = subprocess.run([sys.executable, "-m", "mr6v", "z", "--params", ex1], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "5"
