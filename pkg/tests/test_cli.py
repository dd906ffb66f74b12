import csv
import io
import json
import subprocess
import sys

import pytest

from berezin_lab import cli, engine
from berezin_lab.certifier import BY_ID, CATALOG, CertResult, runner
from berezin_lab.errors import NoConvergence


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_transform_examples(capsys):
    code, out, _ = run(capsys, "transform", "--op", "rank_one_z", "--space", "hardy:64", "--lambda", "0.7071")
    assert code == 0
    assert json.loads(out)["values"][0]["value"][0] == pytest.approx(0.25, abs=1e-6)
    code, out, _ = run(capsys, "transform", "--op", "matrix:[[1,1],[2,0]]", "--lambda", "0")
    assert code == 0 and json.loads(out)["values"][0]["value"] == [1.0, 0.0]
    code, out, _ = run(capsys, "transform", "--op", "comp", "--zeta", "1", "--k", "2", "--lambda", "0.7071",
                       "--space", "hardy")
    assert json.loads(out)["values"][0]["value"][0] == pytest.approx(2 / 3, abs=1e-4)


def test_csv_output(capsys):
    code, out, _ = run(capsys, "transform", "--op", "geom_shift", "--beta", "0.5", "--lambda", "0.6",
                       "--lambda", "0.1+0.2i", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == cli.CSV_HEADER and len(rows) == 3
    assert float(rows[1][2]) == pytest.approx(0.384 / 0.82, abs=1e-12)


def test_norms_rank_one(capsys):
    code, out, _ = run(capsys, "norms", "--op", "rank_one_z", "--space", "hardy:64", "--mu", "0,0.5",
                       "--grid", "24x32")
    d = json.loads(out)
    assert code == 0
    assert d["ber"]["value"] == pytest.approx(0.25, abs=1e-6)
    sig = {s["mu"]: s["value"] for s in d["sigma"]}
    assert sig[0.5] == pytest.approx(0.5**1.5, abs=1e-6)
    assert sig[0.0] == pytest.approx(d["ber"]["value"], abs=1e-12)


def test_sweep_mu_zero_matrix(capsys):
    code, out, _ = run(capsys, "sweep-mu", "--op", "matrix:[[0,0],[0,0]]", "--mean", "all", "--p", "1,2")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 30 and all(r["value"] == 0 for r in rows)


def test_range_verdicts(capsys):
    code, out, _ = run(capsys, "range", "--op", "comp", "--zeta", "i", "--classify", "--grid", "100x64")
    assert code == 0 and json.loads(out)["verdict"]["verdict"] == "NonConvex"
    code, out, _ = run(capsys, "range", "--op", "comp", "--zeta", "0.5", "--k", "1", "--classify")
    assert json.loads(out)["verdict"]["verdict"] == "Convex"
    code, out, _ = run(capsys, "range", "--op", "geom_shift", "--beta", "0.3", "--classify")
    assert json.loads(out)["verdict"]["disc_likeness"] <= 1e-12


def test_certify_c7b(capsys):
    code, out, err = run(capsys, "certify", "--claims", "C7b")
    d = json.loads(out)
    assert code == 0 and "asserted violations" in err
    vals = d["claim_reports"][0]["values"]
    assert vals["inf_mu_exact"] == "1560/29" and vals["half_ber_exact"] == "55"
    assert vals["inf_mu"] == pytest.approx(1560 / 29, abs=1e-9)


def test_certify_l4(capsys):
    code, out, _ = run(capsys, "certify", "--claims", "L4", "--trials", "1000")
    assert code == 0 and json.loads(out)["violations"] == 0


@pytest.mark.parametrize("argv", [
    ["norms", "--op", "geom_shift", "--beta", "0.5", "--space", "hardy:64"],  # truncation too short
    ["norms", "--op", "rank_one_z", "--p", "9"],
    ["transform", "--op", "rank_one_z", "--lambda", "1.2"],
    ["certify", "--claims", "C99"],
    ["transform", "--op", "matrix:[[1,2],[3]]", "--lambda", "0"],
    ["norms", "--op", "rank_one_z", "--format", "csv"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_truncation_refusal_names_required_size(capsys):
    code, _, err = run(capsys, "norms", "--op", "geom_shift", "--beta", "0.5", "--space", "hardy:64")
    assert code == 2 and "truncation" in err.lower()


def test_unsupported_model_exit_4(capsys):
    code, _, err = run(capsys, "norms", "--op", "comp", "--zeta", "0.5", "--k", "1")
    assert code == 4 and "unsupported" in err


def test_numeric_failure_exit_3(capsys, monkeypatch):
    def fail(*a, **k):
        raise NoConvergence("forced")

    monkeypatch.setattr(engine, "ber", fail)
    code, _, err = run(capsys, "norms", "--op", "matrix:[[1,0],[0,2]]")
    assert code == 3 and "numeric failure" in err


def test_red_flag_exit_5(capsys, monkeypatch):
    bad = BY_ID["L5"].__class__(**{**BY_ID["L5"].__dict__,
                                   "check": lambda inst, cfg: [CertResult("L5", "forced", 1.0, 0.0, 0.0)]})
    monkeypatch.setattr(runner, "CATALOG", tuple(bad if c.cid == "L5" else c for c in CATALOG))
    monkeypatch.setattr(runner, "BY_ID", dict(BY_ID, L5=bad))
    code, out, _ = run(capsys, "certify", "--claims", "L5", "--trials", "2")
    assert code == 5 and json.loads(out)["claim_reports"][0]["red_flags"]


def test_print_config_round_trip(capsys, tmp_path):
    argv = ["sweep-mu", "--op", "rank_one_z", "--mu", "0.25", "--mean", "harmonic", "--grid", "16x16"]
    code, cfg_text, _ = run(capsys, *argv, "--print-config")
    assert code == 0 and json.loads(cfg_text)["mean"] == "harmonic"
    path = tmp_path / "cfg.json"
    path.write_text(cfg_text)
    _, direct, _ = run(capsys, *argv)
    _, via_file, _ = run(capsys, "sweep-mu", "--config", str(path))
    assert direct == via_file
    _, again, _ = run(capsys, "sweep-mu", "--config", str(path), "--print-config")
    assert again == cfg_text


def test_flags_override_config(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"op": "rank_one_z", "lambda": ["0.5"]}))
    _, out, _ = run(capsys, "transform", "--config", str(path), "--lambda", "0")
    assert json.loads(out)["values"][0]["lambda"] == [0.0, 0.0]
    path.write_text(json.dumps({"bogus": 1}))
    code, _, _ = run(capsys, "transform", "--config", str(path))
    assert code == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "transform", "--op", "rank_one_z", "--lambda", "0.5", "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["values"]


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "berezin_lab.cli", "transform", "--op", "matrix:[[2,0],[0,3]]",
                          "--lambda", "1", "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.splitlines()[1].split(",")[2] == "3.0"
