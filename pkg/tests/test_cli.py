"""CLI: demo configs run clean, reports reproduce byte-for-byte, errors map to
exit code 1 with the violated precondition named."""

import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from orbitlab import cli, jsonio

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"
CONFIGS = sorted(CONFIG_DIR.glob("*.json"))

_TS = re.compile(rb'"generated_at": "[^"]*"')


def load(path):
    return json.loads(path.read_text())


def strip_timestamp(blob: bytes) -> bytes:
    return _TS.sub(b'"generated_at": "X"', blob)


@pytest.mark.parametrize("path", CONFIGS, ids=[p.stem for p in CONFIGS])
def test_demo_configs_run_clean(path, tmp_path):
    cfg = load(path)
    code, report = cli.run_config(cfg, out_dir=tmp_path, emit_csv=True)
    assert code == 0
    assert "error" not in report
    assert (tmp_path / "report.json").exists()
    body = jsonio.loads((tmp_path / "report.json").read_text())
    assert body["command"] == cfg["command"]
    assert body["config_sha256"] == jsonio.config_hash(cfg)


@pytest.mark.parametrize("path", CONFIGS, ids=[p.stem for p in CONFIGS])
def test_reports_reproduce_modulo_timestamp(path, tmp_path):
    cfg = load(path)
    cli.run_config(cfg, out_dir=tmp_path / "a", emit_csv=True)
    cli.run_config(cfg, out_dir=tmp_path / "b", emit_csv=True)
    a = strip_timestamp((tmp_path / "a" / "report.json").read_bytes())
    b = strip_timestamp((tmp_path / "b" / "report.json").read_bytes())
    assert a == b
    for csv in sorted((tmp_path / "a").glob("*.csv")):
        assert csv.read_bytes() == (tmp_path / "b" / csv.name).read_bytes()


def test_precondition_violation_exits_one(tmp_path):
    cfg = {
        "command": "build21",
        "set": {"kind": "annulus", "inner_radius": 1.0, "outer_radius": 2.0},
        "stages": 3,
    }
    code, report = cli.run_config(cfg, out_dir=tmp_path)
    assert code == 1
    assert "unbounded modulus" in report["error"]


def test_spiral_base_one_exits_one(tmp_path):
    cfg = {"command": "spiral", "base": 1.0, "rate": {"irrational": 1.0, "tag": ""}}
    code, report = cli.run_config(cfg, out_dir=tmp_path)
    assert code == 1
    assert "base 1" in report["error"]


def test_unknown_command_rejected():
    with pytest.raises(ValueError):
        cli.run_config({"command": "mystery"})


def test_main_subprocess_smoke(tmp_path):
    out = tmp_path / "run"
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "orbitlab.cli",
            "classify",
            "--config",
            str(CONFIG_DIR / "classify_ring.json"),
            "--out",
            str(out),
        ],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0, proc.stderr
    body = jsonio.loads((out / "report.json").read_text())
    assert body["result"]["classification"]["is_hypercyclic_scalar_set"] is True
    assert body["result"]["classification"]["is_somewhere_hypercyclic_scalar_set"] is False


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["mystery", "--config", "nowhere.json"])
    assert exc.value.code == 2


def test_main_rejects_command_mismatch(tmp_path):
    code = cli.main(
        ["winding", "--config", str(CONFIG_DIR / "classify_ring.json"), "--out", str(tmp_path)]
    )
    assert code == 1


def test_density_overrides(tmp_path):
    cfg_path = CONFIG_DIR / "spiral_density.json"
    code = cli.main(
        [
            "density",
            "--config",
            str(cfg_path),
            "--out",
            str(tmp_path),
            "--eps",
            "0.5",
            "--grid-step",
            "0.1",
            "--ball=-1,0,0.45",
            "--section",
            "0",
        ]
    )
    assert code == 0
    body = jsonio.loads((tmp_path / "report.json").read_text())
    assert body["result"]["density"]["epsilon"] == 0.5
    assert body["result"]["density"]["radius"] == 0.45
