"""CLI behavior: output formats, manifests, exit codes."""

import csv
import json
import subprocess
import sys


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "cvlab.cli", *args], capture_output=True, text=True
    )


def test_exact_rational_output():
    res = run_cli("exact", "--n", "12", "--k", "3")
    assert res.returncode == 0
    assert "fold_covariance = 95/4096" in res.stdout
    assert "cv_mse          = 223/6144" in res.stdout


def test_exact_log_mode():
    res = run_cli("exact", "--n", "8192", "--k", "8", "--mode", "log")
    assert res.returncode == 0
    assert "mode=log" in res.stdout


def test_invalid_fold_count_exits_2_with_diagnostic():
    res = run_cli("exact", "--n", "12", "--k", "5")
    assert res.returncode == 2
    assert "k must divide n" in res.stderr


def test_invalid_rational_cap_exits_2():
    res = run_cli("exact", "--n", "8192", "--k", "8", "--mode", "rational")
    assert res.returncode == 2
    assert "error:" in res.stderr


def test_sweep_writes_csv_and_manifest(tmp_path):
    out = tmp_path / "sweep.csv"
    res = run_cli("sweep", "--n", "24", "--out", str(out))
    assert res.returncode == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["k"] for r in rows] == ["2", "3", "4", "6", "8", "12", "24"]
    assert rows[-1]["m"] == "1" and rows[-1]["cov_leading"] == ""
    assert all("/" in r["cov_exact"] for r in rows)
    manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    assert manifest["command"] == "sweep"
    assert manifest["params"]["n"] == 24
    assert manifest["config_hash"]


def test_simulate_appends_rows_and_is_deterministic(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=12\nk=3\nalgorithm=majority\ntrials=2000\nseed=5\n")
    out = tmp_path / "runs.csv"
    r1 = run_cli("simulate", "--config", str(cfg), "--out", str(out))
    r2 = run_cli("simulate", "--config", str(cfg), "--out", str(out))
    assert r1.returncode == r2.returncode == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert rows[0] == rows[1]  # same config and seed reproduce bit-for-bit
    manifest = json.loads((tmp_path / "runs.csv.manifest.json").read_text())
    assert manifest["rng_family"] == "numpy.random.Philox"
    assert manifest["params"]["seed"] == 5


def test_simulate_seed_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=12\nk=3\nalgorithm=majority\ntrials=2000\nseed=5\n")
    out = tmp_path / "runs.csv"
    run_cli("simulate", "--config", str(cfg), "--out", str(out))
    run_cli("simulate", "--config", str(cfg), "--seed", "6", "--out", str(out))
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["mean"] != rows[1]["mean"]
    assert rows[1]["seed"] == "6"


def test_simulate_bad_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n=12\nk=3\nalgorithm=perceptron\n")
    res = run_cli("simulate", "--config", str(cfg))
    assert res.returncode == 2
    assert "unknown algorithm" in res.stderr


def test_asymptotic_report():
    res = run_cli("asymptotic", "--n", "5000", "--m", "250")
    assert res.returncode == 0
    assert "rel_err_leading" in res.stdout


def test_verify_exact_suite_passes():
    res = run_cli("verify", "--suite", "exact")
    assert res.returncode == 0
    assert "PASS" in res.stdout
    assert "FAIL" not in res.stdout
