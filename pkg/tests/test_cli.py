import json
import subprocess
import sys

import pytest

from gridexplore.cli import AggregateReport, RunSpec, episode_seed, main
from gridexplore.cli.config import ConfigError
from gridexplore.env import TrajectoryRecord
from gridexplore.gen import load_environment


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_gen_single_file(tmp_path, capsys):
    out = tmp_path / "e.json"
    assert run_cli("gen", "--dag-size", "small", "--exploit-demand", "high", "--seed", 5, "--out", out) == 0
    env = load_environment(out)
    assert env.config.seed == 5 and len(env.dag) == 4
    assert "budget" in capsys.readouterr().out


def test_gen_sweep_writes_nine_files(tmp_path):
    out = tmp_path / "envs"
    assert run_cli("gen", "--sweep", "--out", out) == 0
    files = sorted(out.glob("*.json"))
    assert len(files) == 9
    assert len({load_environment(f).config.name for f in files}) == 9


def test_gen_pasta_fixture(tmp_path):
    out = tmp_path / "pasta.json"
    assert run_cli("gen", "--fixture", "pasta", "--out", out) == 0
    assert load_environment(out).dag.goal_node.label == "Tomato Pasta with Cheese"


def test_invalid_config_exits_two(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("gen:\n  dag_size: small\n  option_count_probs: {1: 0.5, 2: 0.2}\n")
    assert run_cli("gen", "--config", cfg, "--out", tmp_path / "x.json") == 2
    assert "sum" in capsys.readouterr().err
    cfg.write_text("colour: red\n")
    assert run_cli("gen", "--config", cfg) == 2


def test_usage_errors_exit_one(tmp_path):
    with pytest.raises(SystemExit) as err:
        run_cli("gen", "--dag-size", "huge")
    assert err.value.code == 1
    assert run_cli("eval") == 1
    assert run_cli("render", "--traj", tmp_path / "missing.jsonl") == 1


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunSpec.from_dict({"seeds": []}).validate()
    with pytest.raises(ConfigError):
        RunSpec.from_dict({"agent": "wizard"}).validate()


def test_episode_seed_is_stable():
    assert episode_seed(0, "env-a", 1) == episode_seed(0, "env-a", 1)
    assert episode_seed(0, "env-a", 1) != episode_seed(0, "env-b", 1)
    assert episode_seed(1, "env-a", 1) != episode_seed(0, "env-a", 1)


def _envs(tmp_path):
    out = tmp_path / "envs"
    run_cli("gen", "--dag-size", "small", "--seeds", 0, 1, 2, "--out", out)
    return out


def test_run_is_deterministic_across_parallelism(tmp_path):
    envs = _envs(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli("run", "--env-dir", envs, "--agent", "random", "--seeds", 0, 1, "--out", a, "--seed", 9) == 0
    assert run_cli("run", "--env-dir", envs, "--agent", "random", "--seeds", 0, 1, "--out", b, "--seed", 9,
                   "--parallel", 4) == 0
    fa = sorted(a.glob("*.jsonl"))
    assert len(fa) == 6
    for f in fa:
        assert f.read_text() == (b / f.name).read_text()
    summary = json.loads((a / "run_summary.json").read_text())
    assert len(summary) == 6


def test_run_then_eval_and_aggregate(tmp_path, capsys):
    envs = _envs(tmp_path)
    runs = tmp_path / "runs"
    assert run_cli("run", "--env-dir", envs, "--agent", "explorer", "--out", runs) == 0
    reports = tmp_path / "reports"
    assert run_cli("eval", "--traj-dir", runs, "--out", reports, "--aggregate", "--per-step") == 0
    docs = sorted(reports.glob("*.report.json"))
    assert len(docs) == 3
    doc = json.loads(docs[0].read_text())
    assert set(doc) == {"trajectory", "environment", "group", "agent", "summary", "steps"}
    assert doc["summary"]["success"] is True
    agg = json.loads((reports / "aggregate.json").read_text())
    assert agg["small-medium-easy"]["episodes"] == 3
    capsys.readouterr()
    assert run_cli("report", reports) == 0
    assert "small-medium-easy" in capsys.readouterr().out


def test_single_eval_to_stdout(tmp_path, capsys):
    envs = _envs(tmp_path)
    runs = tmp_path / "runs"
    run_cli("run", "--env", envs / sorted(p.name for p in envs.iterdir())[0], "--agent", "oracle", "--out", runs)
    traj = next(runs.glob("*.jsonl"))
    capsys.readouterr()
    assert run_cli("eval", "--traj", traj) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["success"] is True
    assert "steps" not in doc or doc["steps"] is None


def test_eval_of_tampered_log_exits_two(tmp_path):
    envs = _envs(tmp_path)
    runs = tmp_path / "runs"
    run_cli("run", "--env-dir", envs, "--agent", "random", "--out", runs)
    traj = sorted(runs.glob("*.jsonl"))[0]
    lines = traj.read_text().splitlines()
    row = json.loads(lines[3])
    row["position"] = [99, 99]
    lines[3] = json.dumps(row)
    traj.write_text("\n".join(lines) + "\n")
    assert run_cli("eval", "--traj", traj) == 2


def test_aggregate_counts_nulls():
    docs = [
        {"group": "g", "summary": {"success": True, "steps": 4, "exploration_error": 0.5, "exploitation_error": None}},
        {"group": "g", "summary": {"success": False, "steps": 9, "exploration_error": None, "exploitation_error": 0.25}},
        {"group": "g", "summary": {"success": True, "steps": 6, "exploration_error": 0.0, "exploitation_error": None}},
    ]
    g = AggregateReport.from_reports(docs).to_dict()["g"]
    assert g["success_rate"] == pytest.approx(2 / 3)
    assert g["exploration_error"] == 0.25 and g["exploration_null"] == 1 and g["exploration_defined"] == 2
    assert g["exploitation_error"] == 0.25 and g["exploitation_null"] == 2
    assert g["mean_steps_success"] == 5


def test_empty_directory_warns(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run_cli("eval", "--traj-dir", empty, "--out", tmp_path / "r") == 0
    assert "no trajectory files" in capsys.readouterr().err
    assert run_cli("report", empty) == 0
    assert "no reports" in capsys.readouterr().err


def test_render_frame_count(tmp_path):
    envs = _envs(tmp_path)
    runs = tmp_path / "runs"
    run_cli("run", "--env-dir", envs, "--agent", "explorer", "--out", runs)
    traj = sorted(runs.glob("*.jsonl"))[0]
    steps = TrajectoryRecord.load(traj).steps
    frames = tmp_path / "frames"
    assert run_cli("render", "--traj", traj, "--out", frames) == 0
    assert len(list(frames.glob("*.txt"))) == steps + 1
    assert len(list(frames.glob("*.svg"))) == steps + 1
    first = sorted(frames.glob("*.txt"))[0].read_text()
    assert first.startswith("t=0 ") and "@" in first


def test_chat_run_without_endpoint_exits_three(tmp_path, monkeypatch):
    envs = _envs(tmp_path)
    monkeypatch.setenv("CHAT_API_KEY", "k")
    code = run_cli(
        "run", "--env", sorted(envs.glob("*.json"))[0], "--agent", "chat",
        "--endpoint", "http://127.0.0.1:9/v1/chat/completions", "--max-retries", 0, "--timeout", 0.5,
        "--out", tmp_path / "runs",
    )
    assert code == 3
    rec = TrajectoryRecord.load(next((tmp_path / "runs").glob("*.jsonl")))
    assert rec.terminal == "aborted"


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "gridexplore.cli.main", "gen", "--dag-size", "small", "--out", tmp_path / "e.json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
