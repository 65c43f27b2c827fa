import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from numrad import ConfigError, save_matrix
from numrad.cli import _parse_dims
from numrad.harness import CampaignConfig, run_campaign

QUIET = lambda msg: None

SMALL = dict(
    seed=11,
    samples_per_family=3,
    dims=[2, 3],
    families=["ginibre", "positive"],
    workers=1,
    quad_samples=1,
)


def _body(path):
    lines = []
    for line in open(path, encoding="utf-8"):
        obj = json.loads(line)
        obj.pop("elapsed_s")
        lines.append(json.dumps(obj, sort_keys=True))
    return "\n".join(lines)


def run_cli(*args, timeout=600):
    return subprocess.run(
        [sys.executable, "-m", "numrad.cli", *args], capture_output=True, text=True, timeout=timeout
    )


class TestConfig:
    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            CampaignConfig.from_obj({"seeds": 3})

    def test_bad_values_rejected(self):
        with pytest.raises(ConfigError):
            CampaignConfig.from_obj({"dims": [0]})
        with pytest.raises(ConfigError):
            CampaignConfig.from_obj({"families": ["nope"]})
        with pytest.raises(ConfigError):
            CampaignConfig.from_obj({"format": "xml"})
        with pytest.raises(ConfigError):
            CampaignConfig.from_obj({"samples_per_family": -1})

    def test_defaults_are_the_campaign_profile(self):
        cfg = CampaignConfig()
        assert cfg.seed == 1
        assert cfg.samples_per_family == 1000
        assert cfg.dims == list(range(2, 9))
        assert cfg.entries is None

    def test_parse_dims_forms(self):
        assert _parse_dims("4") == [4]
        assert _parse_dims("2..5") == [2, 3, 4, 5]
        assert _parse_dims("2,3,7") == [2, 3, 7]
        with pytest.raises(ConfigError):
            _parse_dims("x..y")


class TestCampaign:
    def test_empty_campaign(self):
        cfg = CampaignConfig(samples_per_family=0, workers=1)
        rep = run_campaign(cfg, log=QUIET)
        assert rep.total_reports == 0
        assert rep.total_violations == 0

    def test_small_campaign_sound(self, tmp_path):
        out = tmp_path / "r.jsonl"
        cfg = CampaignConfig(**SMALL, out=str(out))
        rep = run_campaign(cfg, log=QUIET)
        assert rep.total_violations == 0
        assert rep.total_reports > 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == rep.total_reports
        obj = json.loads(lines[0])
        assert list(obj.keys()) == [
            "entry_id", "operand_digest", "params", "chain_values",
            "slack", "holds", "tolerance", "elapsed_s", "status",
        ]
        for e, stats in rep.per_entry.items():
            assert stats["violations"] == 0

    def test_determinism_across_runs(self, tmp_path):
        p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run_campaign(CampaignConfig(**SMALL, out=str(p1)), log=QUIET)
        run_campaign(CampaignConfig(**SMALL, out=str(p2)), log=QUIET)
        assert _body(p1) == _body(p2)

    def test_parallel_equivalence(self, tmp_path):
        p1, p2 = tmp_path / "w1.jsonl", tmp_path / "w2.jsonl"
        run_campaign(CampaignConfig(**{**SMALL, "workers": 1}, out=str(p1)), log=QUIET)
        run_campaign(CampaignConfig(**{**SMALL, "workers": 2}, out=str(p2)), log=QUIET)
        assert _body(p1) == _body(p2)

    def test_csv_format(self, tmp_path):
        out = tmp_path / "r.csv"
        cfg = CampaignConfig(
            seed=3, samples_per_family=1, dims=[2], families=["shift"],
            workers=1, quad_samples=0, out=str(out), format="csv",
        )
        run_campaign(cfg, log=QUIET)
        rows = list(csv.reader(open(out)))
        assert rows[0] == [
            "entry_id", "operand_digest", "params", "chain_values",
            "slack", "holds", "tolerance", "elapsed_s", "status",
        ]
        assert len(rows) > 1
        json.loads(rows[1][2])  # params cell is JSON
        json.loads(rows[1][3])  # chain cell is JSON

    def test_entry_selection(self):
        cfg = CampaignConfig(
            seed=5, samples_per_family=2, dims=[2], families=["ginibre"],
            entries=["E01", "E04"], workers=1, quad_samples=0,
        )
        rep = run_campaign(cfg, log=QUIET)
        assert set(rep.per_entry) == {"E01", "E04"}
        assert rep.per_entry["E01"]["count"] == 2
        assert rep.per_entry["E04"]["count"] == 2


class TestCli:
    def test_verify_empty_exits_zero(self):
        r = run_cli("verify", "--samples", "0")
        assert r.returncode == 0
        summary = json.loads(r.stdout)
        assert summary["total_reports"] == 0

    def test_verify_unknown_entry_exits_two(self):
        r = run_cli("verify", "--entries", "E99")
        assert r.returncode == 2

    def test_verify_bad_config_exits_two(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text('{"bogus": 1}')
        r = run_cli("verify", "--config", str(p))
        assert r.returncode == 2

    def test_verify_small_run(self, tmp_path):
        out = tmp_path / "out.jsonl"
        r = run_cli(
            "verify", "--seed", "2", "--samples", "2", "--dims", "2",
            "--families", "shift,positive", "--entries", "E01,E02,E25",
            "--out", str(out), "--format", "jsonl", "--workers", "1",
            "--quad-samples", "0",
        )
        assert r.returncode == 0, r.stderr
        summary = json.loads(r.stdout)
        assert summary["total_violations"] == 0
        assert out.exists()

    def test_verify_zero_tolerance_flags_violations(self):
        # equalities carry strictly negative slack in general, so a
        # zero-tolerance policy must report violations and exit 1
        r = run_cli(
            "verify", "--seed", "2", "--samples", "4", "--dims", "2,3",
            "--families", "positive", "--entries", "E25,E27",
            "--tol-abs", "0", "--tol-rel", "0", "--workers", "1",
            "--quad-samples", "0",
        )
        assert r.returncode == 1, (r.stdout, r.stderr)
        summary = json.loads(r.stdout)
        assert summary["total_violations"] >= 1
        assert summary["violations"]

    def test_bounds_shift(self, tmp_path, shift2):
        p = tmp_path / "shift.json"
        save_matrix(shift2, p)
        r = run_cli("bounds", "--matrix", str(p))
        assert r.returncode == 0
        obj = json.loads(r.stdout)
        assert obj["norm"] == pytest.approx(1.0, abs=1e-12)
        assert obj["numerical_radius"] == pytest.approx(0.5, abs=1e-9)
        assert obj["spectral_radius"] == pytest.approx(0.0, abs=1e-9)
        assert obj["re_norm"] == pytest.approx(0.5, abs=1e-12)
        assert obj["im_norm"] == pytest.approx(0.5, abs=1e-12)
        assert obj["all_hold"] is True
        assert obj["integrals"]["radius_segment"]["value"] == pytest.approx(0.5, abs=1e-7)

    def test_bounds_identity(self, tmp_path):
        p = tmp_path / "eye.json"
        save_matrix(np.eye(2), p)
        r = run_cli("bounds", "--matrix", str(p))
        obj = json.loads(r.stdout)
        for key in ("norm", "numerical_radius", "spectral_radius"):
            assert obj[key] == pytest.approx(1.0, abs=1e-9)

    def test_bounds_malformed_matrix(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        r = run_cli("bounds", "--matrix", str(p))
        assert r.returncode == 2
        r = run_cli("bounds", "--matrix", str(tmp_path / "missing.json"))
        assert r.returncode == 2

    def test_sweep_rows(self, tmp_path, shift2):
        p = tmp_path / "shift.json"
        save_matrix(shift2, p)
        r = run_cli("sweep", "--matrix", str(p), "--grid", "3")
        assert r.returncode == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0] == "theta,g"
        assert len(lines) == 5  # header + 3 rows + trailing comment
        assert lines[-1].startswith("# omega = 0.5")
        for line in lines[1:4]:
            theta, g = line.split(",")
            assert float(g) == pytest.approx(0.5, abs=1e-12)

    def test_sweep_one_by_one(self, tmp_path):
        p = tmp_path / "one.json"
        save_matrix(np.array([[1.0]]), p)
        r = run_cli("sweep", "--matrix", str(p), "--grid", "8")
        lines = r.stdout.strip().splitlines()
        assert len(lines) == 10
        vals = [float(line.split(",")[1]) for line in lines[1:9]]
        expect = [np.cos(2 * np.pi * k / 8) for k in range(8)]
        assert vals == pytest.approx(expect, abs=1e-12)
