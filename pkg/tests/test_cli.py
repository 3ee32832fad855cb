"""Command-line workflow tests: exit codes, config-file precedence, and
determinism of the generate/train/eval artifacts."""

import json

import pytest

from pavetwin.cli import EXIT_DATA, EXIT_USAGE, main

GEN_ARGS = ["generate", "--nodes", "50", "--edges", "100", "--months", "4", "--seed", "11"]
TRAIN_ARGS = ["train", "--epochs", "25", "--hidden-dim", "8", "--seed", "11"]


def run(argv):
    return main(argv)


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    data = root / "data"
    model = root / "model.json"
    assert run(GEN_ARGS + ["--out-dir", str(data)]) == 0
    assert run(TRAIN_ARGS + ["--data-dir", str(data), "--out", str(model)]) == 0
    return root, data, model


def test_generate_writes_three_csvs(workspace):
    _, data, _ = workspace
    for name in ("segments.csv", "distress.csv", "connectivity.csv"):
        assert (data / name).exists()
    header = (data / "segments.csv").read_text().splitlines()[0]
    assert header == "segment_id,length_m,material,age_years,traffic_volume"


def test_generate_is_byte_deterministic(workspace, tmp_path):
    _, data, _ = workspace
    assert run(GEN_ARGS + ["--out-dir", str(tmp_path)]) == 0
    for name in ("segments.csv", "distress.csv", "connectivity.csv"):
        assert (tmp_path / name).read_bytes() == (data / name).read_bytes()


def test_train_writes_checkpoint_and_report(workspace):
    _, _, model = workspace
    doc = json.loads(model.read_text())
    assert doc["version"] == 1
    report = json.loads(model.with_suffix(".report.json").read_text())
    assert len(report["train_losses"]) == 25
    assert report["train_losses"][-1] < report["train_losses"][0]


def test_eval_writes_report_and_scatters(workspace, tmp_path, capsys):
    _, data, model = workspace
    code = run([
        "eval", "--data-dir", str(data), "--checkpoint", str(model),
        "--seed", "11", "--out-dir", str(tmp_path),
    ])
    assert code == 0
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines[0] == "model,mae,rmse,r2"
    assert len(lines) == 8  # header + gnn + six baselines
    assert (tmp_path / "scatter_gnn.csv").exists()
    assert (tmp_path / "scatter_linear.csv").exists()
    out = capsys.readouterr().out
    assert "Model" in out and "gnn" in out


def test_simulate_writes_trajectory(workspace, tmp_path):
    _, data, model = workspace
    scenario = tmp_path / "scenario.json"
    scenario.write_text(json.dumps({
        "horizon": 5,
        "actions": [{"month": 0, "kind": "patch", "segment_ids": [0, 1]}],
    }))
    out = tmp_path / "trajectory.csv"
    code = run([
        "simulate", "--data-dir", str(data), "--checkpoint", str(model),
        "--scenario", str(scenario), "--seed", "11", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "month,mean_condition,below_threshold"
    assert len(lines) == 7  # header + months 0..5


def test_unknown_option_is_usage_error():
    assert run(["generate", "--bogus"]) == EXIT_USAGE


def test_missing_data_dir_is_data_error(tmp_path):
    assert run(["train", "--data-dir", str(tmp_path / "absent")]) == EXIT_DATA


def test_corrupt_checkpoint_is_data_error(workspace, tmp_path):
    _, data, _ = workspace
    bad = tmp_path / "model.json"
    bad.write_text("{not json")
    assert run(["eval", "--data-dir", str(data), "--checkpoint", str(bad)]) == EXIT_DATA


def test_config_file_overrides_defaults(tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("nodes = 30  # small run\nedges=60\nmonths=3\nseed=5\n")
    out = tmp_path / "data"
    assert run(["generate", "--config", str(cfg), "--out-dir", str(out)]) == 0
    n_rows = len((out / "segments.csv").read_text().splitlines()) - 1
    assert n_rows == 30
    months = {line.split(",")[1] for line in (out / "distress.csv").read_text().splitlines()[1:]}
    assert months == {"0", "1", "2"}


def test_explicit_flag_beats_config_file(tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("nodes=30\nedges=60\n")
    out = tmp_path / "data"
    code = run([
        "generate", "--config", str(cfg), "--nodes", "20", "--edges", "40",
        "--out-dir", str(out),
    ])
    assert code == 0
    n_rows = len((out / "segments.csv").read_text().splitlines()) - 1
    assert n_rows == 20


def test_unknown_config_key_is_data_error(tmp_path):
    cfg = tmp_path / "gen.cfg"
    cfg.write_text("nodez=30\n")
    assert run(["generate", "--config", str(cfg), "--out-dir", str(tmp_path)]) == EXIT_DATA


def test_invalid_edge_count_is_data_error(tmp_path):
    # More edges than distinct pairs cannot be generated.
    code = run(["generate", "--nodes", "5", "--edges", "100", "--out-dir", str(tmp_path)])
    assert code == EXIT_DATA
