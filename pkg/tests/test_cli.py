import csv
import json
import os

import pytest

from hilbert_tikhonov.cli import RunConfig, emit_config, main, parse_config
from hilbert_tikhonov.exceptions import ConfigurationError
from hilbert_tikhonov.experiment import TABLE1_DELTAS


class TestParseConfig:
    def test_empty_gives_defaults(self):
        cfg = parse_config("")
        assert cfg == RunConfig()
        assert (cfg.N, cfg.c, cfg.kappa, cfg.a, cfg.radius) == (6000, 0.9, 1.8, 1.0, 3.0)
        assert (cfg.alpha0, cfg.theta, cfg.k) == (0.9, 10.0, 3.0)
        assert cfg.deltas == TABLE1_DELTAS

    @pytest.mark.parametrize("doc,field", [({"k": 0.5}, "k"), ({"c": 2.0}, "c"), ({"theta": 1}, "theta"),
                                           ({"deltas": []}, "deltas"), ({"N": 1}, "N")])
    def test_violations_name_field(self, doc, field):
        with pytest.raises(ConfigurationError, match=field):
            parse_config(json.dumps(doc))

    def test_unknown_keys_listed(self):
        with pytest.raises(ConfigurationError, match="bogus, zeta"):
            parse_config(json.dumps({"zeta": 1, "bogus": 2, "k": 4}))

    def test_flags_override_file(self):
        cfg = parse_config(json.dumps({"seed": 3, "k": 4}), {"seed": 5, "alpha": None})
        assert cfg.seed == 5 and cfg.k == 4.0

    def test_round_trip(self):
        cfg = parse_config(json.dumps({"seed": 7, "deltas": [1e-3, 1e-4], "command": "select", "delta": 1e-4}))
        assert parse_config(emit_config(cfg)) == cfg

    def test_command_requirements(self):
        with pytest.raises(ConfigurationError, match="alpha"):
            parse_config(json.dumps({"command": "solve", "delta": 1e-3}))

    def test_bad_json(self):
        with pytest.raises(ConfigurationError):
            parse_config("{not json")


def test_sweep_writes_table(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["--command", "sweep", "--output", str(out)]) == 0
    text = out.read_text()
    assert text.endswith("\n")
    rows = list(csv.DictReader(text.splitlines()))
    assert len(rows) == 10
    assert [float(r["delta"]) for r in rows] == list(TABLE1_DELTAS)


def test_sweep_json(tmp_path):
    out = tmp_path / "sweep.json"
    assert main(["--command", "sweep", "--format", "json", "--output", str(out)]) == 0
    assert len(json.loads(out.read_text())) == 10


def test_diagnostics_files(tmp_path):
    out = tmp_path / "diag"
    assert main(["--command", "diagnostics", "--output", str(out)]) == 0
    for name in ("lemma33.csv", "lemma35.csv", "lemma44.csv", "lemma45.csv", "chi.csv"):
        lines = (out / name).read_text().splitlines()
        assert len(lines) > 1 and "ratio1" in lines[0]


def test_solve_deterministic(tmp_path):
    outputs = []
    for i in range(2):
        out = tmp_path / f"solve{i}.csv"
        assert main(["--command", "solve", "--alpha", "1e-6", "--delta", "1e-3", "--seed", "1",
                     "--output", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"n,u\n") and outputs[0].count(b"\n") == 6001


def test_select_from_config_file(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "select", "delta": 1e-3, "format": "json"}))
    before = (cfg.read_bytes(), os.stat(cfg).st_mtime_ns)
    out = tmp_path / "select.json"
    assert main(["--config", str(cfg), "--output", str(out)]) == 0
    assert (cfg.read_bytes(), os.stat(cfg).st_mtime_ns) == before
    doc = json.loads(out.read_text())
    assert doc["residual"] <= doc["k_delta"]


def test_config_error_report(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"k": 0.5}))
    assert main(["--config", str(cfg)]) == 2
    report = json.loads(capsys.readouterr().err)
    assert report["status"] == "error" and report["exit_code"] == 2 and "k" in report["message"]


def test_missing_config_file(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "missing.json")]) == 2
    assert json.loads(capsys.readouterr().err)["type"] == "FileNotFoundError"


def test_runtime_error_report(tmp_path, capsys):
    out = tmp_path / "no_such_dir" / "x.csv"
    assert main(["--command", "sweep", "--output", str(out)]) == 1
    assert json.loads(capsys.readouterr().err)["status"] == "error"
