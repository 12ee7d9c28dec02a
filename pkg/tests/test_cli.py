import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from tfhomology.cli import main, parse_config


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, np.array([[float(v) for v in r] for r in reader])


def test_solve_lane_emden_closed_form(capsys):
    code, out, err = run(["solve", "--p", "0", "--lane-emden", "--xmax", "2"], capsys)
    assert code == 0
    header, data = rows(out)
    assert header == ["x", "y", "yp"]
    # in Lane-Emden mode the columns carry theta and theta'
    x, theta, dtheta = data.T
    assert np.max(np.abs(theta - (1 + x ** 2 / 6))) < 1e-8
    assert np.max(np.abs(dtheta - x / 3)) < 1e-8
    summary = json.loads(err)
    assert summary["command"] == "solve" and summary["status"] == "ok"
    assert summary["metrics"]["termination"] == "reached_x_max"


def test_solve_at_shot_slope(capsys):
    code, out, _ = run(["solve", "--p", "1.5", "--slope", "-1.588071", "--xmax", "50"],
                       capsys)
    assert code == 0
    _, data = rows(out)
    assert data[-1, 0] == 50.0
    assert 0 < data[-1, 1] < 1e-2


def test_seventeen_digits(capsys):
    _, out, _ = run(["solve", "--p", "1.5", "--slope", "-1.5", "--xmax", "0.5"], capsys)
    line = out.splitlines()[2]
    assert any(len(v.replace("-", "").replace(".", "").split("e")[0]) >= 16
               for v in line.split(","))


def test_shoot_json(capsys):
    code, out, _ = run(["shoot", "--tol", "1e-8"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"command", "config", "metrics", "status"}
    assert doc["metrics"]["B"] == pytest.approx(-1.5880710, abs=1e-7)


def test_majorana_then_reconstruct(tmp_path, capsys):
    tu = tmp_path / "tu.csv"
    code, _, err = run(["majorana", "--grid", "2001", "--output", str(tu)], capsys)
    assert code == 0
    metrics = json.loads(err)["metrics"]
    assert metrics["boundary_slope_fd"] == pytest.approx(-9 + 73 ** 0.5, abs=1e-4)
    assert metrics["B_from_u0"] == pytest.approx(-1.588071, abs=1e-6)
    code, out, err = run(["reconstruct", "--input", str(tu)], capsys)
    assert code == 0
    header, data = rows(out)
    assert header == ["t", "x", "y"]
    t, x, y = data[1:].T
    assert np.max(np.abs(x ** 3 * y / (144 * t ** 6) - 1)) < 1e-8


def test_reconstruct_dresner_matches_majorana(capsys):
    _, out_m, _ = run(["reconstruct", "--grid", "201"], capsys)
    _, out_d, _ = run(["reconstruct", "--grid", "201", "--chart", "dresner"], capsys)
    _, dm = rows(out_m)
    _, dd = rows(out_d)
    assert np.allclose(dm, dd, rtol=1e-8, atol=1e-12)


def test_invariance_command(capsys):
    code, out, err = run(["invariance", "--p", "2.5", "--lambda", "2"], capsys)
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header == ["p", "lambda", "chart", "max_dev"]
    doc = json.loads(err)
    assert doc["metrics"]["max_dev"] <= 1e-6
    assert {r["chart"] for r in doc["metrics"]["rows"]} == {"coppel", "milne"}


def test_compare_json_summary(tmp_path, capsys):
    summary = tmp_path / "s.json"
    code, out, _ = run(["compare", "--xmax", "10", "--summary", str(summary)], capsys)
    assert code == 0
    assert out.splitlines()[0] == "x,y_direct,y_reconstructed,rel_err"
    doc = json.loads(summary.read_text())
    assert doc["metrics"]["max_rel_err"] <= 1e-4


def test_deterministic_output(capsys):
    argv = ["invariance", "--p", "2.0", "--lambda", "0.5", "--points", "40", "--seed", "7"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_exit_precondition(capsys):
    code, _, err = run(["invariance", "--p", "1", "--lambda", "2"], capsys)
    assert code == 2
    assert err.startswith("error[precondition]:") and "q" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [
    ["solve", "--p", "1"],
    ["majorana", "--grid", "1"],
    ["shoot", "--tol", "-1"],
    ["bogus"],
    ["solve", "--xmax", "abc"],
    ["reconstruct", "--input", "/nonexistent/file.csv"],
])
def test_exit_precondition_cases(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("error[precondition]:")


def test_exit_numerical(capsys):
    code, _, err = run(["shoot", "--bracket", "-1.5", "-1.0"], capsys)
    assert code == 3
    assert err.startswith("error[numerical]:")


def test_exit_bound(capsys):
    code, _, err = run(["invariance", "--p", "2.5", "--lambda", "2", "--points", "20",
                        "--bound", "1e-30"], capsys)
    assert code == 4
    assert err.strip().splitlines()[-1].startswith("error[bound]:")


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\np = 2.0 3.0\nlambda = 0.5\npoints = 30\n")
    config = parse_config(["invariance", "--config", str(cfg), "--points", "40"])
    assert config.ps == [2.0, 3.0]
    assert config.lambdas == [0.5]
    assert config.points == 40


def test_config_file_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lane_emden = true\np = 0\nxmax = 2\n")
    config = parse_config(["solve", "--config", str(cfg)])
    assert config.lane_emden and config.p == 0.0 and config.x_max == 2.0


def test_defaults_match_acceptance_runs():
    assert parse_config(["shoot"]).shoot_tol == 1e-8
    compare = parse_config(["compare"])
    assert (compare.x_min, compare.x_max, compare.bound) == (0.01, 50.0, 1e-4)
    inv = parse_config(["invariance"])
    assert inv.ps == [1.2, 1.5, 2.0, 2.5, 3.0] and inv.lambdas == [0.5, 2.0]
    assert inv.bound == 1e-6
    assert parse_config(["majorana"]).grid == 2001


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tfhomology", "shoot", "--tol", "1e-6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["metrics"]["B"] == pytest.approx(-1.588071, abs=1e-5)
