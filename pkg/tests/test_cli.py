import json
import subprocess
import sys
from pathlib import Path

import pytest

from dmsym import cli
from dmsym.demos import DEMOS

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", DEMOS)
def test_demo_golden(name, capsys):
    code, out, _ = run(["demo", name], capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_demo_is_reproducible(capsys):
    _, a, _ = run(["demo", "su3", "--seed", "12345"], capsys)
    _, b, _ = run(["demo", "su3", "--seed", "12345"], capsys)
    _, c, _ = run(["demo", "su3"], capsys)
    assert a == b and a != c


def test_unknown_demo(capsys):
    code, _, _ = run(["demo", "nope"], capsys)
    assert code == 2


def test_check_transpose(capsys):
    code, out, _ = run(["check", DATA / "transpose2.json"], capsys)
    assert code == 0
    assert "CP: false" in out and "min_eig: -1.0" in out


def test_check_identity(capsys):
    code, out, _ = run(["check", DATA / "identity3.json"], capsys)
    assert code == 0
    assert "eigenvalues: [3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]" in out
    assert "kraus_rank: 1" in out


def test_check_failed_validation(capsys):
    code, out, _ = run(["check", DATA / "not_trace_preserving.json"], capsys)
    assert code == 1 and "passed: false" in out


@pytest.mark.parametrize("path", sorted((DATA / "malformed").glob("*.json")))
def test_malformed_inputs_exit_nonzero(path, capsys):
    cmd = "group-residual" if "structure" in path.name else "check"
    extra = ["--n", "1,0,0", "--nbar", "0,1,0"] if cmd == "group-residual" else []
    code, out, err = run([cmd, path, *extra], capsys)
    assert code == 2 and out == "" and err.startswith("dmsym:")


def test_group_residual_commands(capsys):
    code, out, _ = run(["group-residual", DATA / "su2_generator.json", "--n", "1,2,3", "--nbar", "0,-1,0.5"], capsys)
    assert code == 0 and "residual: 0.0" in out
    code, _, _ = run(["group-residual", DATA / "su2_flipped.json", "--n", "1,0,0", "--nbar", "0,1,0"], capsys)
    assert code == 1
    code, out, _ = run(["group-residual", DATA / "commuting_generator.json", "--n", "1,-2", "--nbar", "0.3,4"], capsys)
    assert code == 0 and "residual: 0.0" in out
    code, _, _ = run(["group-residual", DATA / "su2_generator.json", "--n", "1,a,0", "--nbar", "0,1,0"], capsys)
    assert code == 2
    code, _, _ = run(["group-residual", DATA / "su2_generator.json", "--n", "1,0", "--nbar", "0,1,0"], capsys)
    assert code == 2


def test_json_and_csv_formats(capsys, tmp_path):
    code, out, _ = run(["check", DATA / "transpose2.json", "--format", "json"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["cp"] is False and obj["min_eig"] == -1.0
    code, out, _ = run(["demo", "transpose", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "key,value"
    dest = tmp_path / "traj.csv"
    code, out, _ = run(["demo", "lindblad-backward", "--format", "csv", "--t", "0.05", "--out", dest], capsys)
    lines = dest.read_text().splitlines()
    assert code == 0 and out == "" and lines[0].startswith("time,trace_re,min_eig")
    assert len(lines) == 1 + 51


def test_bad_flags(capsys):
    assert run(["demo", "su3", "--trials", "0"], capsys)[0] == 2
    assert run(["demo", "lindblad-backward", "--dt", "-1"], capsys)[0] == 2
    assert run(["demo", "su3", "--seed", "xyz"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dmsym", "demo", "transpose"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "transpose.txt").read_text()


def test_float_format():
    assert cli.fmt(-1.0) == "-1.0"
    assert cli.fmt(3) == "3"
    assert cli.fmt(1e-15) == "0.0"
    assert cli.fmt(0.1 + 0.2) == "0.3"
    assert cli.fmt(complex(-1, 2)) == "-1.0+2.0j"
    assert cli.fmt(None) == "none"
