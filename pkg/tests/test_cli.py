"""CLI surface: exit codes, output files, determinism."""

import json

import pytest
from conftest import toy_fredmd_text

from oospred.cli import main


@pytest.fixture
def toy_data(tmp_path):
    text, names = toy_fredmd_text(n_months=160, p=3, seed=8)
    path = tmp_path / "panel.csv"
    path.write_text(text)
    return path, names


def test_test_command_smoke(toy_data, tmp_path, capsys):
    path, _ = toy_data
    out = tmp_path / "report.json"
    code = main(
        [
            "test",
            str(path),
            "--target",
            "TARGET",
            "--threads",
            "1",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    captured = capsys.readouterr()
    assert "p-values" in captured.out
    assert "key player" in captured.out
    payload = json.loads(out.read_text())
    assert payload["schema"] == "1"
    assert set(payload["pvalues"]) == {
        "raw|null",
        "enhanced|null",
        "raw|alt",
        "enhanced|alt",
    }
    for cell in payload["pvalues"]["enhanced|alt"].values():
        assert 0.0 <= cell["pvalue"] <= 1.0
    assert payload["n"] == 159  # 160 months, last one is target-only


def test_test_command_csv_output(toy_data, tmp_path):
    path, _ = toy_data
    out = tmp_path / "report.csv"
    code = main(
        [
            "test",
            str(path),
            "--target",
            "TARGET",
            "--threads",
            "1",
            "--mu0",
            "0.35",
            "--format",
            "csv",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "variant,mu0,stat,pvalue"
    assert len(lines) == 5  # four variants at one mu0


def test_invalid_mu0_exits_2(toy_data, capsys):
    path, _ = toy_data
    code = main(
        ["test", str(path), "--target", "TARGET", "--threads", "1", "--mu0", "0.5"]
    )
    assert code == 2
    assert "degenerate" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path):
    assert main(["test", str(tmp_path / "nope.csv"), "--target", "X"]) == 2


def test_keyplayer_command(toy_data, tmp_path, capsys):
    path, _ = toy_data
    out = tmp_path / "kp.json"
    code = main(
        [
            "keyplayer",
            str(path),
            "--target",
            "TARGET",
            "--threads",
            "1",
            "--mu0",
            "0.35",
            "--statistic",
            "raw",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    ranks = payload["rankings"]["0.35"]
    assert len(ranks) == 3
    assert {r["name"] for r in ranks} == {"PRED1", "PRED2", "PRED3"}


def test_dump_dataset(toy_data, tmp_path):
    path, _ = toy_data
    out = tmp_path / "dump.csv"
    code = main(
        ["dump-dataset", str(path), "--target", "TARGET", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "date,y,PRED1,PRED2,PRED3"
    assert len(lines) == 160  # header + 159 rows


def test_simulate_size_manifest_and_determinism(tmp_path, capsys):
    manifest = tmp_path / "size.json"
    manifest.write_text(
        json.dumps(
            {"scenario": "A-i", "n": 150, "p": 3, "reps": 60, "mu0": [0.3], "seed": 9}
        )
    )
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code = main(
            [
                "simulate-size",
                str(manifest),
                "--out",
                str(out),
                "--threads",
                "2",
            ]
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    rej = payload["results"][0]["rejection_enhanced"]
    assert 0.0 <= rej <= 0.35  # loose: 60 reps at 10% nominal


def test_simulate_size_csv(tmp_path):
    manifest = tmp_path / "size.json"
    manifest.write_text(
        json.dumps({"scenario": "B-ii", "n": 120, "p": 2, "reps": 10, "mu0": [0.3, 0.4]})
    )
    out = tmp_path / "size.csv"
    code = main(
        ["simulate-size", str(manifest), "--format", "csv", "--out", str(out), "--threads", "1"]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("experiment,mu0,")


def test_simulate_power_manifest(tmp_path):
    manifest = tmp_path / "power.json"
    manifest.write_text(
        json.dumps(
            {
                "dgp": "i",
                "slope_column": 3,
                "n": 200,
                "p": 10,
                "p1": 5,
                "reps": 30,
                "mu0": [0.45],
            }
        )
    )
    out = tmp_path / "power.json.out"
    code = main(["simulate-power", str(manifest), "--out", str(out), "--threads", "1"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["results"][0]["rejection_enhanced"] >= 0.5


def test_simulate_keyplayer_manifest(tmp_path):
    manifest = tmp_path / "kp.json"
    manifest.write_text(
        json.dumps(
            {"dgp": "i", "n_list": [150], "p": 10, "p1": 5, "reps": 25, "mu0": [0.35]}
        )
    )
    out = tmp_path / "kp.out"
    code = main(
        ["simulate-keyplayer", str(manifest), "--out", str(out), "--threads", "1"]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    rows = {row["j_hat"]: row["mu0=0.35"] for row in payload["results"]}
    assert set(rows) == {"1", "2", "other"} or set(rows) == {1, 2, "other"}
    assert rows[2] > 0.5  # the larger-slope active predictor dominates


def test_unknown_scenario_exits_2(tmp_path, capsys):
    manifest = tmp_path / "bad.json"
    manifest.write_text(json.dumps({"scenario": "Z-9", "reps": 2}))
    assert main(["simulate-size", str(manifest), "--threads", "1"]) == 2
    manifest.write_text(json.dumps({"dgp": "huh", "reps": 2}))
    assert main(["simulate-power", str(manifest), "--threads", "1"]) == 2


def test_bad_manifest_json_exits_2(tmp_path):
    manifest = tmp_path / "bad.json"
    manifest.write_text("{not json")
    assert main(["simulate-size", str(manifest), "--threads", "1"]) == 2
