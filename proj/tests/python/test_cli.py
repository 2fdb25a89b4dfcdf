import os
import subprocess

import pytest

CLI = os.environ.get("SSA_CLI_BIN")

pytestmark = pytest.mark.skipif(not CLI, reason="SSA_CLI_BIN not set")


def cli(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def report_fields(out_dir):
    fields = {}
    with open(out_dir / "report.txt") as f:
        for line in f:
            key, _, rest = line.strip().partition(" ")
            fields[key] = rest
    return fields


def test_run_writes_report_and_trace(tmp_path):
    r = cli("run", "--function", "f1", "--dim", "4", "--seed", "12",
            "--budget", "4000", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    fields = report_fields(tmp_path)
    assert fields["function"] == "f1"
    assert fields["n"] == "4"
    assert fields["seed"] == "12"
    assert fields["pop"] == "4"
    assert fields["budget"] == "4000"
    assert len(fields["position"].split()) == 4
    assert "best" in fields
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert lines[0] == "evaluations,best"
    assert len(lines) > 2


def test_run_is_deterministic(tmp_path):
    outs = []
    for name in ("a", "b"):
        d = tmp_path / name
        d.mkdir()
        r = cli("run", "--function", "f3", "--dim", "5", "--seed", "77",
                "--budget", "3000", "--out", d)
        assert r.returncode == 0, r.stderr
        outs.append((d / "report.txt").read_text())
    assert outs[0] == outs[1]


def test_missing_dim_exits_2(tmp_path):
    r = cli("run", "--function", "f1", "--out", tmp_path)
    assert r.returncode == 2


def test_unknown_function_exits_2(tmp_path):
    r = cli("run", "--function", "f99", "--dim", "4", "--out", tmp_path)
    assert r.returncode == 2


def test_gen_data_is_idempotent(tmp_path):
    f = tmp_path / "f9_5.txt"
    for _ in range(2):
        r = cli("gen-data", "--function", "f9", "--dim", "5", "--seed", "3", "--out", f)
        assert r.returncode == 0, r.stderr
    first = f.read_bytes()
    r = cli("gen-data", "--function", "f9", "--dim", "5", "--seed", "3", "--out", f)
    assert r.returncode == 0
    assert f.read_bytes() == first


def test_experiment_csv_outputs(tmp_path):
    r = cli("experiment", "--function", "f1,f6", "--dim", "3", "--runs", "5",
            "--budget", "2000", "--pop", "5", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    summary = (tmp_path / "summary.csv").read_text().splitlines()
    assert summary[0] == "function,n,mean,std,min,median,max,mean_std"
    assert len(summary) == 3
    runs = (tmp_path / "runs.csv").read_text().splitlines()
    assert runs[0] == "function,n,run,seed,final"
    assert len(runs) == 11
    ecdf = (tmp_path / "ecdf.csv").read_text().splitlines()
    assert ecdf[0] == "function,n,threshold,rate"
    traces = (tmp_path / "traces.csv").read_text().splitlines()
    assert traces[0] == "function,n,run,evaluations,best"


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("function = f1\ndim = 4\nseed = 5\nbudget = 2000\n")
    d1 = tmp_path / "cfg_only"
    d1.mkdir()
    r = cli("run", "--config", cfg, "--out", d1)
    assert r.returncode == 0, r.stderr
    assert report_fields(d1)["seed"] == "5"

    d2 = tmp_path / "flag_wins"
    d2.mkdir()
    r = cli("run", "--config", cfg, "--seed", "9", "--out", d2)
    assert r.returncode == 0, r.stderr
    assert report_fields(d2)["seed"] == "9"


def test_config_file_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("function = f1\ndim = 4\nnot_a_key = 1\n")
    r = cli("run", "--config", cfg, "--out", tmp_path)
    assert r.returncode == 2
