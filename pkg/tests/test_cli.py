import json
import math

import numpy as np
import pytest

from circstein.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_uniform_closed_column(capsys):
    code, out, _ = _run(
        capsys, ["kernel", "--family", "uniform", "--format", "csv", "--grid", "512"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# tool=circstein")
    assert "grid_size=512" in lines[0] and "seed=0" in lines[0] and "version=" in lines[0]
    header = lines[1].split(",")
    assert header == ["theta", "tau_classical", "tau_circular_closed", "tau_circular_numeric"]
    for row in lines[2:]:
        theta, _, closed, _ = (float(v) for v in row.split(","))
        assert closed == pytest.approx(1.0 + math.cos(theta), abs=1e-10)


def test_bound_json_example(capsys):
    code, out, _ = _run(
        capsys,
        [
            "bound",
            "--family", "von_mises", "--family", "bingham",
            "--location", "0", "--location", "0",
            "--concentration", "2", "--concentration", "1",
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["lower"] - 1e-6 <= doc["oracle_w1"] <= doc["upper"] + 1e-6
    assert doc["upper"] <= 12.5664
    assert doc["grid_size"] == 4096 and doc["seed"] == 0
    assert doc["tool"] == "circstein" and "version" in doc


def test_w1_csv_round_trippable(capsys):
    code, out, _ = _run(
        capsys,
        [
            "w1",
            "--family", "uniform", "--family", "von_mises",
            "--location", "0", "--location", "0",
            "--concentration", "0", "--concentration", "1",
            "--format", "csv", "--grid", "1024",
        ],
    )
    assert code == 0
    lines = out.strip().splitlines()
    row = dict(zip(lines[1].split(","), lines[2].split(",")))
    assert 0.0 < float(row["w1"]) < math.pi


class TestConfigErrors:
    def test_wrong_distribution_count(self, capsys):
        code, _, err = _run(capsys, ["bound", "--family", "uniform"])
        assert code == 2
        assert "config error" in err

    def test_unknown_family(self, capsys):
        code, _, err = _run(capsys, ["kernel", "--family", "gaussian"])
        assert code == 2
        assert "family" in err

    def test_out_of_range_parameter(self, capsys):
        code, _, err = _run(
            capsys,
            ["kernel", "--family", "cardioid", "--location", "0", "--concentration", "0.9"],
        )
        assert code == 2
        assert "rho" in err

    def test_bad_grid(self, capsys):
        code, _, err = _run(capsys, ["kernel", "--family", "uniform", "--grid", "4"])
        assert code == 2

    def test_missing_config_file(self, capsys):
        code, _, err = _run(capsys, ["kernel", "--config", "/nonexistent/cfg.json"])
        assert code == 2


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "distributions": [
                    {"family": "uniform", "location": 0.0, "concentration": 0.0}
                ],
                "grid_size": 256,
                "format": "json",
            }
        )
    )
    code, out, _ = _run(capsys, ["kernel", "--config", str(cfg)])
    assert code == 0
    assert json.loads(out)["grid_size"] == 256
    code, out, _ = _run(capsys, ["kernel", "--config", str(cfg), "--grid", "512"])
    assert code == 0
    assert json.loads(out)["grid_size"] == 512


def test_env_grid_override(capsys, monkeypatch):
    monkeypatch.setenv("CIRCSTEIN_GRID", "1024")
    code, out, _ = _run(capsys, ["kernel", "--family", "uniform"])
    assert code == 0
    assert json.loads(out)["grid_size"] == 1024


def test_invalid_env_grid_is_config_error(capsys, monkeypatch):
    monkeypatch.setenv("CIRCSTEIN_GRID", "lots")
    code, _, err = _run(capsys, ["kernel", "--family", "uniform"])
    assert code == 2


def test_output_file_and_determinism(tmp_path, capsys):
    argv = [
        "w1",
        "--family", "von_mises", "--family", "wrapped_normal",
        "--location", "0", "--location", "0",
        "--concentration", "1", "--concentration", "1",
        "--format", "csv", "--grid", "1024",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_bayes_rows(capsys):
    code, out, _ = _run(
        capsys, ["bayes", "--n-values", "50,100", "--seed", "3", "--grid", "1024"]
    )
    assert code == 0
    doc = json.loads(out)
    rows = doc["rows"]
    assert [r["n"] for r in rows] == [50, 100]
    for r in rows:
        assert r["oracle_w1"] <= r["envelope"]
        assert r["R_star"] > 0 and r["kappa_R"] > 0
