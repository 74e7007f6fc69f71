"""Episode recording, line-delimited export, replay verification, CSV.

File format (one JSON object per line):

    {"type": "header", "format": "mbnav-trajectory", "version": 1,
     "config_hash": ..., "seed": ..., "n": ..., "m": ...}
    {"type": "step", "index": 0, "action": [[fx, fy], ...],
     "positions": [[x, y], ...], "velocities": [[vx, vy], ...],
     "visited_mask": ..., "reward": ..., "breakdown": [rc, ri, rf, rv],
     "terminated": ..., "cause": "..."}

Numbers serialize with shortest round-trip precision, so re-exporting the
same episode is byte-identical and replay on the same platform is bitwise.
Actions are recorded as passed in (pre-clamp); replay re-clamps identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .config import EnvConfig, config_hash
from .env import Action, Env, StepOutcome
from .errors import CorruptFileError, ReplayMismatchError, VersionMismatchError
from .policy import LinearPolicy

TRAJECTORY_FORMAT = "mbnav-trajectory"
TRAJECTORY_VERSION = 1


@dataclass(frozen=True)
class TrajectoryStep:
    index: int
    action: tuple[tuple[float, float], ...]
    positions: tuple[tuple[float, float], ...]
    velocities: tuple[tuple[float, float], ...]
    visited_mask: int
    reward: float
    breakdown: tuple[float, float, float, float]
    terminated: bool
    cause: str


@dataclass
class Trajectory:
    config_hash: str
    seed: int
    n_robots: int
    n_rois: int
    steps: list[TrajectoryStep]

    @property
    def total_reward(self) -> float:
        return sum(s.reward for s in self.steps)


class TrajectoryRecorder:
    """Accumulates (action, outcome) pairs for one episode."""

    def __init__(self, cfg: EnvConfig, seed: int):
        self._traj = Trajectory(
            config_hash=config_hash(cfg),
            seed=seed,
            n_robots=cfg.n_robots,
            n_rois=cfg.n_rois,
            steps=[],
        )

    def record(self, action: Action, outcome: StepOutcome) -> None:
        s = outcome.next_state
        self._traj.steps.append(
            TrajectoryStep(
                index=len(self._traj.steps),
                action=action.forces,
                positions=tuple((p.x, p.y) for p in s.positions),
                velocities=s.velocities,
                visited_mask=s.visited_mask,
                reward=outcome.reward,
                breakdown=outcome.breakdown,
                terminated=outcome.terminated,
                cause=outcome.cause.value,
            )
        )

    def finish(self) -> Trajectory:
        return self._traj


def record_episode(cfg: EnvConfig, policy: LinearPolicy, seed: int) -> Trajectory:
    """Roll the policy through one full episode, recording every step."""
    env = Env(cfg, seed)
    recorder = TrajectoryRecorder(cfg, seed)
    while True:
        action = policy.act(env.observation(), cfg.force_bounds)
        outcome = env.step(action)
        recorder.record(action, outcome)
        if outcome.terminated:
            return recorder.finish()


def export_trajectory(traj: Trajectory, path: str | Path) -> None:
    lines = [
        json.dumps(
            {
                "type": "header",
                "format": TRAJECTORY_FORMAT,
                "version": TRAJECTORY_VERSION,
                "config_hash": traj.config_hash,
                "seed": traj.seed,
                "n": traj.n_robots,
                "m": traj.n_rois,
            },
            separators=(",", ":"),
        )
    ]
    for s in traj.steps:
        lines.append(
            json.dumps(
                {
                    "type": "step",
                    "index": s.index,
                    "action": [list(f) for f in s.action],
                    "positions": [list(p) for p in s.positions],
                    "velocities": [list(v) for v in s.velocities],
                    "visited_mask": s.visited_mask,
                    "reward": s.reward,
                    "breakdown": list(s.breakdown),
                    "terminated": s.terminated,
                    "cause": s.cause,
                },
                separators=(",", ":"),
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_trajectory(path: str | Path) -> Trajectory:
    try:
        lines = Path(path).read_text().splitlines()
        records = [json.loads(line) for line in lines if line.strip()]
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptFileError(f"{path}: {exc}") from exc
    if not records:
        raise CorruptFileError(f"{path}: empty trajectory file")
    header = records[0]
    if header.get("type") != "header" or header.get("format") != TRAJECTORY_FORMAT:
        raise CorruptFileError(f"{path}: missing trajectory header")
    if header.get("version") != TRAJECTORY_VERSION:
        raise VersionMismatchError(
            f"{path}: unsupported trajectory version {header.get('version')!r}"
        )
    try:
        steps = []
        for rec in records[1:]:
            if rec.get("type") != "step":
                raise CorruptFileError(f"{path}: unexpected record type {rec.get('type')!r}")
            steps.append(
                TrajectoryStep(
                    index=int(rec["index"]),
                    action=tuple(tuple(f) for f in rec["action"]),
                    positions=tuple(tuple(p) for p in rec["positions"]),
                    velocities=tuple(tuple(v) for v in rec["velocities"]),
                    visited_mask=int(rec["visited_mask"]),
                    reward=float(rec["reward"]),
                    breakdown=tuple(rec["breakdown"]),
                    terminated=bool(rec["terminated"]),
                    cause=str(rec["cause"]),
                )
            )
        traj = Trajectory(
            config_hash=str(header["config_hash"]),
            seed=int(header["seed"]),
            n_robots=int(header["n"]),
            n_rois=int(header["m"]),
            steps=steps,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFileError(f"{path}: malformed trajectory: {exc}") from exc
    for i, s in enumerate(traj.steps):
        if s.index != i:
            raise CorruptFileError(f"{path}: step indices not contiguous at {i}")
    return traj


def replay(traj: Trajectory, cfg: EnvConfig) -> None:
    """Re-run the recorded actions and check every step bitwise.

    Raises ReplayMismatchError at the first divergent step; a config whose
    hash differs from the recording is rejected before simulating.
    """
    expected_hash = config_hash(cfg)
    if traj.config_hash != expected_hash:
        raise ReplayMismatchError(
            -1,
            f"config hash {expected_hash} does not match recorded {traj.config_hash}",
        )
    env = Env(cfg, traj.seed)
    for s in traj.steps:
        if env.terminated:
            raise ReplayMismatchError(s.index, "recorded steps continue past termination")
        outcome = env.step(Action(s.action))
        got = outcome.next_state
        if tuple((p.x, p.y) for p in got.positions) != s.positions:
            raise ReplayMismatchError(s.index, "positions diverged")
        if got.velocities != s.velocities:
            raise ReplayMismatchError(s.index, "velocities diverged")
        if got.visited_mask != s.visited_mask:
            raise ReplayMismatchError(s.index, "visited mask diverged")
        if outcome.reward != s.reward:
            raise ReplayMismatchError(
                s.index, f"reward {outcome.reward} != recorded {s.reward}"
            )
        if outcome.breakdown != s.breakdown:
            raise ReplayMismatchError(s.index, "reward breakdown diverged")
        if outcome.terminated != s.terminated or outcome.cause.value != s.cause:
            raise ReplayMismatchError(s.index, "termination diverged")


def trajectory_to_csv(traj: Trajectory, path: str | Path) -> None:
    """Flatten to CSV for plotting tools (one row per step)."""
    n = traj.n_robots
    cols = ["step"]
    for i in range(n):
        cols += [f"x{i}", f"y{i}", f"vx{i}", f"vy{i}", f"fx{i}", f"fy{i}"]
    cols += ["visited_mask", "reward", "r_c", "r_i", "r_f", "r_v", "terminated", "cause"]
    rows = [",".join(cols)]
    for s in traj.steps:
        cells: list[str] = [str(s.index)]
        for i in range(n):
            cells += [
                repr(s.positions[i][0]),
                repr(s.positions[i][1]),
                repr(s.velocities[i][0]),
                repr(s.velocities[i][1]),
                repr(s.action[i][0]),
                repr(s.action[i][1]),
            ]
        cells += [
            str(s.visited_mask),
            repr(s.reward),
            repr(s.breakdown[0]),
            repr(s.breakdown[1]),
            repr(s.breakdown[2]),
            repr(s.breakdown[3]),
            str(int(s.terminated)),
            s.cause,
        ]
        rows.append(",".join(cells))
    Path(path).write_text("\n".join(rows) + "\n")
