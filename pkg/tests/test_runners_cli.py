"""Preset runners and the CLI driver: manifests, artifacts, reproducibility."""

import json
import subprocess
import sys

import pytest

from tasep_wall.cli import main, run_preset
from tasep_wall.runners import (run_refdist_eval, run_symmetry_audit,
                                run_wall_mc)


def test_symmetry_audit_small():
    rep, art = run_symmetry_audit(sequences=300, maxlen=60)
    assert rep["pass"] and rep["violations"] == 0
    assert rep["exhaustive_sequences"] == 121


def test_refdist_eval_rows():
    rep, art = run_refdist_eval(law="tw1", s_min=-2.0, s_max=2.0, step=1.0)
    assert rep["pass"] and rep["monotone"]
    rows = art["results"]
    assert rows[0] == ("s", "value")
    assert len(rows) == 6


def test_run_preset_writes_artifacts(tmp_path):
    rep = run_preset("symmetry-audit",
                     {"sequences": "200", "maxlen": "50"}, tmp_path / "o")
    assert rep["pass"]
    out = tmp_path / "o"
    assert (out / "results.csv").exists()
    assert (out / "report.json").exists()
    summary = (out / "summary.txt").read_text()
    assert summary.startswith("symmetry-audit: PASS")
    man = json.loads((out / "manifest.json").read_text())
    assert man["scenario"] == "symmetry-audit"
    assert man["parameters"]["sequences"] == 200
    assert "results.csv" in man["outputs"]
    assert "summary.txt" in man["outputs"]


def test_manifest_reproducibility(tmp_path):
    """Re-running the same manifest parameters gives byte-identical outputs."""
    run_preset("wall-mc", {"runs": "4000"}, tmp_path / "a")
    run_preset("wall-mc", {"runs": "4000"}, tmp_path / "b")
    ma = json.loads((tmp_path / "a" / "manifest.json").read_text())
    mb = json.loads((tmp_path / "b" / "manifest.json").read_text())
    assert ma["outputs"] == mb["outputs"]
    assert (tmp_path / "a" / "results.csv").read_bytes() == \
        (tmp_path / "b" / "results.csv").read_bytes()
    plots = list((tmp_path / "a" / "plots").glob("*.svg"))
    assert plots, "wall-mc should emit an SVG plot"


def test_unknown_parameter_rejected(tmp_path):
    with pytest.raises(SystemExit):
        run_preset("symmetry-audit", {"nonsense": "1"}, tmp_path / "x")


def test_cli_list_and_run(tmp_path, capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "symmetry-audit" in out and "second-class" in out
    rc = main(["run", "symmetry-audit", "--set", "sequences=100",
               "--set", "maxlen=40", "--out", str(tmp_path / "cli")])
    assert rc == 0
    assert (tmp_path / "cli" / "manifest.json").exists()


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "cfg.toml"
    cfg.write_text("[symmetry-audit]\nsequences = 150\nmaxlen = 30\n")
    rc = main(["run", "symmetry-audit", "--config", str(cfg),
               "--out", str(tmp_path / "c2")])
    assert rc == 0
    man = json.loads((tmp_path / "c2" / "manifest.json").read_text())
    assert man["parameters"]["sequences"] == 150


def test_cli_entrypoint_subprocess(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "tasep_wall.cli", "run", "refdist-eval",
         "--set", "step=2.0", "--out", str(tmp_path / "rd")],
        capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert "[PASS]" in r.stdout
    csv_text = (tmp_path / "rd" / "results.csv").read_text()
    assert csv_text.startswith("s,value")
