import csv
import json
import math
import subprocess
import sys

import pytest

from gradenorm.cli import run
from gradenorm.config import ConfigError, resolve


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def report(out, op):
    with open(out / f"{op}.json") as fh:
        return json.load(fh)


GRASS = {"algebra": {"kind": "antisymmetric", "d": 3, "N": 3}, "norm": {"w_family": "factorial_inv"}}


def test_witness(tmp_path):
    cfg = write(tmp_path, "c.json", GRASS)
    assert run(["witness", "--config", cfg, "--out", str(tmp_path)]) == 0
    r = report(tmp_path, "witness")
    assert set(r) == {"op", "spec", "norms", "result", "pass", "seed", "tolerance", "config"}
    assert r["result"]["ratio"] == pytest.approx(1.1547005, abs=1e-7)
    assert r["pass"] is True
    assert (tmp_path / "witness.meta.json").exists()


def test_audit_weights(tmp_path):
    cfg = write(tmp_path, "c.json", {"norms": {"sigma": {"w_family": "factorial_inv_shift"}}, "params": {"grid": 50}})
    assert run(["audit-weights", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert report(tmp_path, "audit-weights")["result"]["delta_min"] == pytest.approx(1.0, abs=1e-12)


def test_flat_weights_fail_with_witness(tmp_path):
    cfg = write(tmp_path, "c.json", {
        "algebra": {"kind": "symmetric", "d": 1, "N": 12},
        "norms": {"sigma": {"w_family": "sigma_rho_s", "sigma": 0}},
        "params": {"target_gamma": math.sqrt(3)},
    })
    assert run(["sample-ratios", "--config", cfg, "--out", str(tmp_path)]) == 1
    r = report(tmp_path, "sample-ratios")
    assert r["result"]["max_ratio"] > math.sqrt(3)
    assert r["result"]["argmax"]["a"]
    with open(tmp_path / "sample-ratios.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["trial", "degree_a", "degree_b", "ratio"]
    assert len(rows) == 10_001


def test_reports_are_reproducible_across_threads(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "symmetric", "d": 3, "N": 4},
                                     "norms": {"sigma": {"w_family": "factorial_inv"}}, "params": {"count": 700}})
    out = tmp_path / "out"
    first = {}
    for threads in ("1", "3"):
        assert run(["sample-ratios", "--config", cfg, "--out", str(out), "--threads", threads]) == 0
        for name in ("sample-ratios.json", "sample-ratios.csv"):
            data = (out / name).read_bytes()
            assert first.setdefault(name, data) == data


def test_best_constant(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "antisymmetric", "d": 2, "N": 2},
                                     "norms": {"sigma": {"w_family": "factorial_inv"}}})
    assert run(["best-constant", "--config", cfg, "--out", str(tmp_path)]) == 0
    r = report(tmp_path, "best-constant")["result"]
    assert r["gamma_best"] == pytest.approx(math.sqrt(2.5), abs=1e-8)
    assert r["dense_agrees"]


def test_oversize_instance(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "antisymmetric", "d": 14, "N": 14},
                                     "norms": {"sigma": {"w_family": "factorial_inv"}}})
    assert run(["best-constant", "--config", cfg, "--out", str(tmp_path)]) == 2


def test_gamma_check(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "antisymmetric", "d": 3, "N": 3},
                                     "norm": {"w_family": "factorial_inv", "gamma_diag": [2, 3, 5]},
                                     "params": {"count": 200}})
    assert run(["gamma-check", "--config", cfg, "--out", str(tmp_path)]) == 0
    r = report(tmp_path, "gamma-check")["result"]
    assert r["max_residual"] <= 1e-10 and all(r["checks"].values())


def test_violation_search(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "antisymmetric", "d": 6, "N": 6}})
    assert run(["violation-search", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert report(tmp_path, "violation-search")["result"]["ratio"] == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    cfg = write(tmp_path, "n.json", {"algebra": {"kind": "antisymmetric", "d": 6, "N": 6},
                                     "norm": {"w_family": "sigma_rho_s", "gram": "normalized"}})
    assert run(["violation-search", "--config", cfg, "--out", str(tmp_path)]) == 1


def test_suite_subset(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"params": {"criteria": [3, 5]}})
    assert run(["suite", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert "criterion 3 [PASS]" in capsys.readouterr().out


@pytest.mark.parametrize("cfg, extra", [
    ({**GRASS, "bogus": {}}, []),
    ({**GRASS, "params": {"count": 3}}, []),
    ({"algebra": {"kind": "antisymmetric", "d": 3, "N": 3},
      "norm": {"w_family": "factorial_inv", "kind": "symmetric"}}, []),
    ({"algebra": {"kind": "nope", "d": 3, "N": 3}, "norm": {}}, []),
    ({"algebra": {"kind": "antisymmetric", "d": 3}, "norm": {}}, []),
    (GRASS, ["--tolerance=-1"]),
    (GRASS, ["stray"]),
    (GRASS, ["--seed", "3"]),
])
def test_config_errors(tmp_path, cfg, extra):
    path = write(tmp_path, "c.json", cfg)
    assert run(["witness", "--config", path, "--out", str(tmp_path)] + extra) == 2


def test_malformed_json(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert run(["witness", "--config", str(p)]) == 2


def test_precedence_cli_over_file_over_defaults():
    raw = {"algebra": {"kind": "symmetric", "d": 2, "N": 3}, "norms": {"sigma": {"w_family": "factorial_inv"}},
           "params": {"count": 50}}
    exp = resolve("sample-ratios", raw, [("params.count", "70"), ("algebra.d", "3"), ("seed", "5")])
    assert exp.params["count"] == 70 and exp.params["seed"] == 5 and exp.algebra.d == 3
    assert exp.params["tolerance"] == 1e-9  # default recorded
    assert exp.resolved["params"]["count"] == 70
    exp = resolve("sample-ratios", raw)
    assert exp.params["count"] == 50


def test_threads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GRADENORM_THREADS", "0")
    cfg = write(tmp_path, "c.json", GRASS)
    assert run(["witness", "--config", cfg, "--out", str(tmp_path)]) == 2
    monkeypatch.setenv("GRADENORM_THREADS", "2")
    assert run(["witness", "--config", cfg, "--out", str(tmp_path)]) == 0
    meta = json.loads((tmp_path / "witness.meta.json").read_text())
    assert meta["threads"] == 2


def test_resolve_rejects_missing_sections():
    with pytest.raises(ConfigError):
        resolve("witness", {"algebra": {"kind": "antisymmetric", "d": 2, "N": 2}})


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, "c.json", {"norms": {"sigma": {"w_family": "sigma_rho_s"}}})
    proc = subprocess.run([sys.executable, "-m", "gradenorm", "audit-weights", "--config", cfg, "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert report(tmp_path, "audit-weights")["result"]["delta_min"] == 99


def test_paired_kinds_have_no_default_ceiling(tmp_path):
    cfg = write(tmp_path, "c.json", {"algebra": {"kind": "paired", "d": 2, "N": 2, "chi": 1,
                                                 "omega": [[1, 0], [0, 1]]},
                                     "norms": {"sigma": {"w_family": "factorial_inv"}}})
    assert run(["best-constant", "--config", cfg, "--out", str(tmp_path)]) == 0
    r = report(tmp_path, "best-constant")["result"]
    assert r["target_gamma"] is None and r["gamma_best"] > math.sqrt(3)
