import json
import subprocess
import sys

import pytest

from ihr_nef import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_feasible_examples(capsys):
    code, out, _ = run(capsys, "feasible", "--family", "hc:2", "--c", "0.9", "--d", "0.0")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "feasible"
    assert "ERRATUM 1: Lemma 7 k-bound" in doc["notes"]
    assert doc["analytic"]["verdict"] == doc["numeric"]["verdict"] == "feasible"
    code, out, _ = run(capsys, "feasible", "--family", "hc:1", "--c", "1.0", "--d", "0.0", "--method", "numeric")
    assert code == 0 and json.loads(out)["verdict"] == "infeasible"


def test_laplace_example(capsys):
    code, out, _ = run(capsys, "laplace", "--family", "ressel:1", "--lambda", "0")
    assert code == 0 and float(out) == 1.0


def test_families(capsys):
    code, out, _ = run(capsys, "families")
    docs = json.loads(out)
    assert code == 0 and {d["family"] for d in docs} >= {"normal:1.0", "hc:2.0", "kummer:1.0:-2.0"}
    code, out, _ = run(capsys, "families", "--family", "gamma:2")
    assert json.loads(out)[0]["lambda_domain"] == [0.0, "inf"]


def test_domain_error_exit_1(capsys):
    code, out, err = run(capsys, "laplace", "--family", "gamma:2", "--lambda", "-1")
    assert code == 1 and out == "" and "outside natural parameter domain" in err
    code, _, err = run(capsys, "plan", "--family", "hc:1", "--lambda-mid", "0", "--c", "2", "--d", "0")
    assert code == 1 and "endpoints outside natural domain" in err
    code, _, err = run(capsys, "hazard", "--family", "gamma:2", "--lambda-mid", "1.5", "--c", "0.5",
                       "--d", "0", "--x-lo", "1", "--x-hi", "1000", "--n", "10")
    assert code == 1 and "survival underflow" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["laplace", "--family", "weibull:2", "--lambda", "1"],
        ["laplace", "--family", "gamma:-1", "--lambda", "1"],
        ["feasible", "--family", "hc:2", "--c", "abc", "--d", "0"],
        ["feasible", "--family", "hc:2", "--c", "nan", "--d", "0"],
        ["hazard", "--family", "normal:1", "--x-lo", "0", "--x-hi", "1", "--n", "10"],
        ["hazard", "--family", "normal:1", "--lambda-mid", "0", "--c", "0.5", "--d", "0",
         "--x-lo", "1", "--x-hi", "0", "--n", "10"],
        ["hazard", "--family", "normal:1", "--lambda-mid", "0", "--c", "0.5", "--d", "0",
         "--x-lo", "0", "--x-hi", "1", "--n", "1"],
        ["verify", "--rel-tol", "-1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


HAZARD_ARGS = ["hazard", "--family", "hc:2", "--lambda-mid", "0", "--c", "0.9", "--d", "0",
               "--x-lo", "-5", "--x-hi", "5", "--n", "21"]


def test_hazard_csv_format(capsys):
    code, out, _ = run(capsys, *HAZARD_ARGS)
    lines = out.split("\n")
    assert code == 0 and lines[0] == "x,density,survival,hazard" and lines[-1] == ""
    rows = [list(map(float, ln.split(","))) for ln in lines[1:-1]]
    assert len(rows) == 21 and rows[0][0] == -5.0 and rows[-1][0] == 5.0
    for x, f, s, h in rows:
        assert h == pytest.approx(f / s, rel=1e-15)
    assert "\r" not in out


def test_hazard_csv_byte_identical():
    cmd = [sys.executable, "-m", "ihr_nef.cli", *HAZARD_ARGS]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"x,density,survival,hazard\n")


def test_hazard_json_reports_monotonicity(capsys):
    code, out, _ = run(capsys, "hazard", "--family", "normal:1", "--lambda-mid", "0", "--c", "0.9",
                       "--d", "0.3", "--x-lo", "-6", "--x-hi", "6", "--n", "200", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["monotone"] is True and len(doc["rows"]) == 200
    assert doc["columns"] == ["x", "density", "survival", "hazard"]


def test_plan_round_trip(capsys, tmp_path):
    path = tmp_path / "plan.json"
    code, out, _ = run(capsys, "plan", "--family", "kummer:1:-2", "--lambda-mid", "1", "--c", "0.5",
                       "--d", "0.1", "--out", str(path))
    assert code == 0
    written = json.loads(path.read_text())
    assert written == json.loads(out)
    code, out, _ = run(capsys, "hazard", "--plan", str(path), "--x-lo", "0.1", "--x-hi", "5", "--n", "120",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["plan"] == written


def test_malformed_plan_file(capsys, tmp_path):
    path = tmp_path / "plan.json"
    path.write_text('{"family": "gamma:2"}')
    with pytest.raises(SystemExit) as exc:
        cli.main(["hazard", "--plan", str(path), "--x-lo", "1", "--x-hi", "2", "--n", "10"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, _, err = run(capsys, "hazard", "--plan", str(tmp_path / "missing.json"),
                       "--x-lo", "1", "--x-hi", "2", "--n", "10")
    assert code == 1 and err


def test_tolerance_flags(capsys):
    code, out, _ = run(capsys, "--rel-tol", "1e-10", "feasible", "--family", "gamma:2", "--c", "0.4",
                       "--d", "0", "--method", "numeric", "--abs-tol", "1e-13")
    assert code == 0 and json.loads(out)["verdict"] == "feasible"


def test_verify_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and all(c["passed"] for c in doc["checks"])


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    monkeypatch.setitem(cli.vf.SUITES, "lemmas", lambda cfg: [cli.vf._check("forced", False)])
    code, out, _ = run(capsys, "verify", "--suite", "lemmas")
    assert code == 1 and json.loads(out)["passed"] is False
