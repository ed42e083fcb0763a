import csv
import io
import json
import subprocess
import sys

import pytest

import oracle
from nsmean import bounds, cli
from nsmean.lemmas import ratio_R1
from nsmean.means import CHAIN, MeanKind, PositivePair, mean


def run_json(*argv):
    code, out = cli.run(list(argv))
    return code, json.loads(out)


def test_eval_arithmetic():
    code, rec = run_json("eval", "--a", "2", "--b", "4", "--kinds", "arithmetic")
    assert code == 0
    assert rec["results"] == {"arithmetic": 3}
    assert rec["schema_version"] == cli.SCHEMA_VERSION
    assert rec["command"] == "eval"
    assert "pass" not in rec


def test_eval_neuman_sandor():
    code, rec = run_json("eval", "--a", "1", "--b", "2", "--kinds", "neuman-sandor")
    assert code == 0
    assert oracle.ulps(rec["results"]["neuman-sandor"], oracle.mean("neuman-sandor", 1, 2)) <= 1


def test_eval_defaults_to_all_eight():
    code, rec = run_json("eval", "--a", "1", "--b", "2")
    assert list(rec["results"]) == [k.value for k in CHAIN]


def test_eval_generalized_log():
    code, rec = run_json("eval", "--a", "1", "--b", "2", "--kinds", "generalized-log:2")
    assert code == 0
    assert rec["results"]["generalized-log(2.0)"] == pytest.approx((7 / 3) ** 0.5, rel=1e-15)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--a", "-1", "--b", "2"],
        ["eval", "--a", "x", "--b", "2"],
        ["eval", "--a", "1", "--b", "inf"],
        ["eval", "--a", "1", "--b", "2", "--kinds", "harmonic"],
        ["enclose", "--a", "1", "--b", "2", "--family", "xy"],
        ["verify", "--grid", "0"],
        ["verify", "--families", "qa,zz"],
        ["sharpness", "--samples", "10"],
        ["sharpness", "--ratio", "r3"],
        ["lemmas", "--samples", "10"],
        ["constants", "--bogus"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out = cli.run(argv)
    assert code == 2
    assert out == ""


def test_enclose_qa():
    code, rec = run_json("enclose", "--a", "1", "--b", "2", "--family", "qa")
    assert code == 0 and rec["pass"] is True
    r = rec["results"]
    assert r["contains"] is True
    assert r["lower"] < r["M"] < r["upper"]
    assert r["width"] == r["upper"] - r["lower"]


def test_enclose_diagonal():
    code, rec = run_json("enclose", "--a", "5", "--b", "5", "--family", "ca")
    assert code == 0
    assert rec["results"]["lower"] == rec["results"]["upper"] == 5


def test_verify_passes():
    code, rec = run_json("verify", "--grid", "20000", "--seed", "42")
    assert code == 0 and rec["pass"] is True
    assert not any(rec["results"]["violations"].values())
    assert rec["inputs"] == {"grid": 20000, "seed": 42, "families": ["qa", "ca"]}


def test_verify_is_byte_identical():
    first = cli.run(["verify", "--grid", "100", "--seed", "7"])
    second = cli.run(["verify", "--grid", "100", "--seed", "7"])
    assert first == second


def test_verify_csv_round_trip(tmp_path):
    code, out = cli.run(["verify", "--grid", "100", "--seed", "7", "--emit", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == list(cli.verification.CSV_COLUMNS)
    for row in rows[:20]:
        a, b = float(row["a"]), float(row["b"])
        assert float(row["M"]) == mean(MeanKind.NEUMAN_SANDOR, PositivePair(a, b))
    side = tmp_path / "margins.csv"
    code, text = cli.run(["verify", "--grid", "100", "--seed", "7", "--csv-out", str(side)])
    assert json.loads(text)["pass"] is True
    assert side.read_text() == out


def test_verify_failure_exits_1(monkeypatch):
    real = bounds.constants()
    broken = bounds.SharpConstants(
        alpha0=real.alpha0 + 1e-3, beta=real.beta, lambda0=real.lambda0, mu=real.mu, p0=real.p0
    )
    monkeypatch.setattr(bounds, "_cached", broken)
    code, rec = run_json("verify", "--grid", "2000", "--seed", "1", "--families", "qa")
    assert code == 1 and rec["pass"] is False
    assert rec["results"]["violations"]["qa_containment_exact"] > 0


@pytest.mark.parametrize("ratio, at_0, at_1", [("r1", 0.8, "alpha0"), ("r2", 0.32, "lambda0")])
def test_sharpness(ratio, at_0, at_1):
    code, rec = run_json("sharpness", "--ratio", ratio, "--samples", "10000")
    assert code == 0 and rec["pass"] is True
    r = rec["results"]
    assert abs(r["limit_at_0"] - at_0) <= 1e-6
    assert abs(r["limit_at_1"] - getattr(bounds.constants(), at_1)) <= 1e-6
    assert r["closed_form_at_0"] == at_0


def test_sharpness_csv_profile():
    code, out = cli.run(["sharpness", "--ratio", "r1", "--samples", "1000", "--emit", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,ratio"
    x, value = map(float, lines[1].split(","))
    assert float(ratio_R1(x)) == value


def test_lemmas_command():
    code, rec = run_json("lemmas", "--samples", "1000")
    assert code == 0 and rec["pass"] is True
    checks = rec["results"]["checkpoints"]
    assert checks["g_alpha0_matches"] and checks["G_lambda0_matches"]
    assert str(checks["g_alpha0_at_t_max"]).startswith("0.569")
    assert str(checks["G_lambda0_at_t_max"]).startswith("12.313")
    reports = rec["results"]["reports"]
    assert all(r["sign_verified"] for r in reports.values())
    assert reports["f_lower"]["switch_point"] is not None


def test_constants_command():
    code, rec = run_json("constants")
    assert code == 0 and rec["pass"] is True
    r = rec["results"]
    assert str(r["alpha0"]).startswith("0.777")
    assert str(r["lambda0"]).startswith("0.274")
    assert str(r["p0"]).startswith("1.843")
    assert all(v <= 1e-12 for v in r["residuals"].values())


def test_constants_failure_exits_1(monkeypatch):
    monkeypatch.setattr(bounds, "_lambda0_closed", lambda: 0.0603)
    code, rec = run_json("constants")
    assert code == 1 and rec["pass"] is False


def test_json_round_trips_floats():
    code, out = cli.run(["constants"])
    rec = json.loads(out)
    c = bounds.constants()
    assert rec["results"]["alpha0"] == c.alpha0
    assert rec["results"]["lambda0"] == c.lambda0
    assert rec["results"]["p0"] == c.p0


def test_float_formatting():
    assert cli.format_float(0.1) == "0.10000000000000001"
    assert float(cli.format_float(1 / 3)) == 1 / 3
    assert cli.leading_digits(1.8435205) == "1.843"
    assert cli.leading_digits(12.31336) == "12.313"


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "nsmean", *argv], capture_output=True, text=True)


def test_module_entry_point_and_streams():
    ok = _subprocess("eval", "--a", "2", "--b", "4", "--kinds", "arithmetic")
    assert ok.returncode == 0 and ok.stderr == ""
    assert json.loads(ok.stdout)["results"]["arithmetic"] == 3
    bad = _subprocess("eval", "--a", "-1", "--b", "2")
    assert bad.returncode == 2 and bad.stdout == "" and "error" in bad.stderr
