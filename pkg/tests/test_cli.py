import json

import pytest

from mbnav.cli import main

from conftest import toy_config
from mbnav import save_config


@pytest.fixture
def toy_env_file(tmp_path):
    path = tmp_path / "toy.json"
    save_config(toy_config(), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_writes_valid_config(self, tmp_path, capsys):
        out = tmp_path / "env.json"
        code, _, _ = run(
            capsys, "gen", "--seed", 33, "--robots", 3, "--rois", 6,
            "--bound", 1000, "--out", out,
        )
        assert code == 0
        data = json.loads(out.read_text())
        assert len(data["start_positions"]) == 3
        assert len(data["rois"]) == 6

    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "gen", "--seed", 5, "--out", a)
        run(capsys, "gen", "--seed", 5, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_bad_params_exit_config(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "gen", "--seed", 1, "--rois", 0, "--out", tmp_path / "x.json"
        )
        assert code == 2
        assert "category=config" in err


class TestEvalReplayPipeline:
    def test_zero_policy_eval_then_replay(self, toy_env_file, tmp_path, capsys):
        traj = tmp_path / "ep.jsonl"
        code, out, _ = run(
            capsys, "eval", "--env", toy_env_file, "--episodes", 1,
            "--seed", 0, "--out-traj", traj,
        )
        assert code == 0
        stats = json.loads(out.splitlines()[-1])
        assert stats["success_rate"] == 0.0
        assert traj.exists()

        code, out, _ = run(capsys, "replay", "--traj", traj, "--env", toy_env_file)
        assert code == 0
        assert "replay ok" in out

    def test_eval_deterministic_outputs(self, toy_env_file, tmp_path, capsys):
        t1, t2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(capsys, "eval", "--env", toy_env_file, "--out-traj", t1, "--seed", 3)
        run(capsys, "eval", "--env", toy_env_file, "--out-traj", t2, "--seed", 3)
        assert t1.read_bytes() == t2.read_bytes()

    def test_tampered_trajectory_exits_4(self, toy_env_file, tmp_path, capsys):
        traj = tmp_path / "ep.jsonl"
        run(capsys, "eval", "--env", toy_env_file, "--out-traj", traj)
        lines = traj.read_text().splitlines()
        rec = json.loads(lines[4])
        rec["reward"] += 0.5
        lines[4] = json.dumps(rec, separators=(",", ":"))
        traj.write_text("\n".join(lines) + "\n")
        code, _, err = run(capsys, "replay", "--traj", traj, "--env", toy_env_file)
        assert code == 4
        assert "category=replay-mismatch" in err

    def test_multi_episode_traj_files(self, toy_env_file, tmp_path, capsys):
        traj = tmp_path / "ep.jsonl"
        code, _, _ = run(
            capsys, "eval", "--env", toy_env_file, "--episodes", 3,
            "--out-traj", traj,
        )
        assert code == 0
        for k in range(3):
            assert (tmp_path / f"ep.ep{k}.jsonl").exists()

    def test_missing_env_file_is_runtime_error(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "eval", "--env", tmp_path / "absent.json"
        )
        assert code == 3
        assert "category=runtime" in err


class TestTrainPipeline:
    def test_train_eval_succeeds_on_toy(self, toy_env_file, tmp_path, capsys):
        ars_file = tmp_path / "ars.json"
        ars_file.write_text(json.dumps({"n_iterations": 120, "seed": 0}))
        policy_file = tmp_path / "policy.json"
        report_file = tmp_path / "train.jsonl"
        code, out, _ = run(
            capsys, "train", "--env", toy_env_file, "--ars-config", ars_file,
            "--out-policy", policy_file, "--out-report", report_file,
        )
        assert code == 0
        summary = json.loads(out.splitlines()[-1])
        assert summary["iterations"] == 120

        code, out, _ = run(
            capsys, "eval", "--env", toy_env_file, "--policy", policy_file,
            "--episodes", 5, "--seed", 100,
        )
        assert code == 0
        stats = json.loads(out.splitlines()[-1])
        assert stats["success_rate"] >= 0.9

        csv_out = tmp_path / "curve.csv"
        code, _, _ = run(
            capsys, "report", "--train-report", report_file, "--out", csv_out
        )
        assert code == 0
        lines = csv_out.read_text().strip().splitlines()
        assert len(lines) == 121

    def test_bad_ars_config_exits_2(self, toy_env_file, tmp_path, capsys):
        ars_file = tmp_path / "ars.json"
        ars_file.write_text(json.dumps({"top_b": 99}))
        code, _, err = run(
            capsys, "train", "--env", toy_env_file, "--ars-config", ars_file,
            "--out-policy", tmp_path / "p.json", "--out-report", tmp_path / "r.jsonl",
        )
        assert code == 2
        assert "category=config" in err


class TestSweep:
    def test_sweep_json_output(self, toy_env_file, capsys):
        code, out, _ = run(
            capsys, "sweep", "--env", toy_env_file, "--speeds", "0.0,0.1",
            "--angle", 0.5236,
        )
        assert code == 0
        data = json.loads(out.splitlines()[-1])
        assert data["speeds"] == [0.0, 0.1]
        assert data["v_clip_over_10"] == 0.5
        assert len(data["successes"]) == 2
