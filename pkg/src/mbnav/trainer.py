"""Augmented Random Search over linear policies.

Per iteration: sample N Gaussian weight perturbations delta_k ~ N(0, noise^2),
roll out the policy at +/- delta_k (2N episodes), keep the top_b directions by
max(r+, r-), and update

    weights += (alpha / (top_b * sigma_R)) * sum_k (r+_k - r-_k) * delta_k

where sigma_R is the standard deviation of the 2*top_b retained rewards.
The default variant ("v2") also whitens observations with running statistics
updated from all states seen during training rollouts; "v1" skips whitening.

Rollouts within an iteration are independent and may run on a thread pool
(capped by the MBNAV_THREADS environment variable); determinism is preserved
because perturbations are pre-sampled per direction and the normalization
update happens serially at the iteration barrier, in direction order.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .config import EnvConfig, config_hash
from .env import Env, TerminationCause, observation_vector
from .errors import ConfigError, CorruptFileError, VersionMismatchError
from .geometry import euclidean_distance
from .policy import LinearPolicy

logger = logging.getLogger("mbnav.trainer")


@dataclass(frozen=True)
class ArsConfig:
    alpha: float = 0.019
    n_directions: int = 16
    top_b: int = 8
    noise: float = 0.05
    n_iterations: int = 100
    eval_every: int = 0
    seed: int = 0
    variant: str = "v2"

    def __post_init__(self):
        if self.alpha < 0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}")
        if self.n_directions < 1:
            raise ConfigError(f"n_directions must be >= 1, got {self.n_directions}")
        if not 1 <= self.top_b <= self.n_directions:
            raise ConfigError(
                f"top_b must be in [1, {self.n_directions}], got {self.top_b}"
            )
        if self.noise <= 0:
            raise ConfigError(f"noise must be positive, got {self.noise}")
        if self.n_iterations < 1:
            raise ConfigError(f"n_iterations must be >= 1, got {self.n_iterations}")
        if self.variant not in ("v1", "v2"):
            raise ConfigError(f"variant must be 'v1' or 'v2', got {self.variant!r}")


@dataclass
class IterationStats:
    iteration: int
    mean_reward: float
    max_reward: float
    sigma_r: float
    timesteps: int  # cumulative training env steps after this iteration
    wall_time_s: float
    guard_skipped: bool = False
    eval_reward: float | None = None


@dataclass
class TrainReport:
    iterations: list[IterationStats] = field(default_factory=list)
    total_timesteps: int = 0
    wall_time_s: float = 0.0
    best_reward: float = float("-inf")
    env_config_hash: str = ""
    ars: ArsConfig | None = None
    policy: LinearPolicy | None = None


@dataclass
class IterationRecord:
    """Raw material of one weight update, for audit hooks."""

    iteration: int
    deltas: np.ndarray  # (N, 2n, 4n+1)
    r_plus: np.ndarray  # (N,)
    r_minus: np.ndarray  # (N,)
    sigma_r: float
    update: np.ndarray | None  # None when the divergence guard fired


@dataclass
class EvalStats:
    mean: float
    std: float
    max_reward: float
    min_reward: float
    reward_range: float
    success_rate: float
    mean_path_length: float
    rewards: list[float]
    successes: list[bool]
    path_lengths: list[float]


@dataclass
class SweepReport:
    """Per-speed evaluation of one policy under increasing wind."""

    angle: float
    speeds: list[float]
    rewards: list[float]
    successes: list[bool]
    max_success_speed: float | None
    v_clip_over_10: float
    robust_below_v_clip_over_10: bool


@dataclass
class _Rollout:
    reward: float
    steps: int
    success: bool
    observations: list[np.ndarray]
    path_length: float


def _run_episode(
    cfg: EnvConfig,
    policy: LinearPolicy,
    seed: int,
    collect_obs: bool,
    collect_path: bool = False,
) -> _Rollout:
    env = Env(cfg, seed)
    obs = env.observation()
    observations: list[np.ndarray] = []
    total = 0.0
    steps = 0
    path = 0.0
    while True:
        if collect_obs:
            observations.append(obs)
        action = policy.act(obs, cfg.force_bounds)
        prev_positions = env.state.positions
        outcome = env.step(action)
        total += outcome.reward
        steps += 1
        if collect_path:
            for p, q in zip(prev_positions, outcome.next_state.positions):
                path += euclidean_distance(p, q)
        if outcome.terminated:
            return _Rollout(
                reward=total,
                steps=steps,
                success=outcome.cause is TerminationCause.ALL_ROIS_VISITED,
                observations=observations,
                path_length=path,
            )
        obs = observation_vector(outcome.next_state, cfg)


def _worker_count() -> int:
    raw = os.environ.get("MBNAV_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def compute_update(
    deltas: np.ndarray,
    r_plus: np.ndarray,
    r_minus: np.ndarray,
    alpha: float,
    top_b: int,
) -> tuple[np.ndarray | None, float]:
    """Top-b reward-weighted aggregation of perturbations.

    Returns (update, sigma_r); update is None when sigma_r is zero (the
    divergence guard: no usable reward signal this iteration).
    """
    scores = np.maximum(r_plus, r_minus)
    order = np.argsort(-scores, kind="stable")[:top_b]
    retained = np.concatenate([r_plus[order], r_minus[order]])
    sigma = float(np.std(retained))
    if sigma == 0.0:
        return None, 0.0
    weighted = np.tensordot(r_plus[order] - r_minus[order], deltas[order], axes=1)
    return (alpha / (top_b * sigma)) * weighted, sigma


def ars_train(
    cfg: EnvConfig,
    ars: ArsConfig,
    iteration_callback: Callable[[IterationRecord], None] | None = None,
) -> tuple[LinearPolicy, TrainReport]:
    """Train a linear policy on cfg; deterministic for a given ars.seed."""
    n, m = cfg.n_robots, cfg.n_rois
    policy = LinearPolicy.zeros(n, m)
    rng = np.random.default_rng(ars.seed)
    report = TrainReport(env_config_hash=config_hash(cfg), ars=ars)
    normalize = ars.variant == "v2"
    workers = _worker_count()
    t0 = time.perf_counter()

    for it in range(ars.n_iterations):
        deltas = rng.normal(
            0.0, ars.noise, size=(ars.n_directions, 2 * n, 4 * n + 1)
        )
        jobs = []
        for k in range(ars.n_directions):
            for sign, delta in ((+1, deltas[k]), (-1, -deltas[k])):
                seed = it * 2 * ars.n_directions + len(jobs)
                jobs.append((policy.perturbed(delta), seed))

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rollouts = list(
                    pool.map(
                        lambda job: _run_episode(cfg, job[0], job[1], normalize),
                        jobs,
                    )
                )
        else:
            rollouts = [_run_episode(cfg, p, s, normalize) for p, s in jobs]

        r_plus = np.array([rollouts[2 * k].reward for k in range(ars.n_directions)])
        r_minus = np.array(
            [rollouts[2 * k + 1].reward for k in range(ars.n_directions)]
        )
        update, sigma = compute_update(deltas, r_plus, r_minus, ars.alpha, ars.top_b)
        if update is None:
            logger.warning(
                "iteration %d: zero reward spread across retained directions; "
                "skipping update", it
            )
        else:
            policy.weights = policy.weights + update

        if normalize:
            for rollout in rollouts:  # fixed direction order: deterministic
                for obs in rollout.observations:
                    policy.observe(obs)

        report.total_timesteps += sum(r.steps for r in rollouts)
        rewards = np.concatenate([r_plus, r_minus])
        report.best_reward = max(report.best_reward, float(rewards.max()))
        stats = IterationStats(
            iteration=it,
            mean_reward=float(rewards.mean()),
            max_reward=float(rewards.max()),
            sigma_r=sigma,
            timesteps=report.total_timesteps,
            wall_time_s=time.perf_counter() - t0,
            guard_skipped=update is None,
        )
        if ars.eval_every > 0 and (it + 1) % ars.eval_every == 0:
            stats.eval_reward = evaluate(policy, cfg, 1, ars.seed).mean
        report.iterations.append(stats)
        if iteration_callback is not None:
            iteration_callback(
                IterationRecord(
                    iteration=it,
                    deltas=deltas,
                    r_plus=r_plus,
                    r_minus=r_minus,
                    sigma_r=sigma,
                    update=update,
                )
            )

    report.wall_time_s = time.perf_counter() - t0
    report.policy = policy
    return policy, report


TRAIN_REPORT_FORMAT = "mbnav-train-report"
TRAIN_REPORT_VERSION = 1


def save_train_report(report: TrainReport, path: str | Path) -> None:
    """One JSON record per line: a header, then one record per iteration."""
    ars = report.ars
    header = {
        "type": "header",
        "format": TRAIN_REPORT_FORMAT,
        "version": TRAIN_REPORT_VERSION,
        "env_config_hash": report.env_config_hash,
        "ars": {
            "alpha": ars.alpha,
            "n_directions": ars.n_directions,
            "top_b": ars.top_b,
            "noise": ars.noise,
            "n_iterations": ars.n_iterations,
            "eval_every": ars.eval_every,
            "seed": ars.seed,
            "variant": ars.variant,
        } if ars is not None else None,
        "total_timesteps": report.total_timesteps,
        "best_reward": report.best_reward,
        "wall_time_s": report.wall_time_s,
    }
    lines = [json.dumps(header, separators=(",", ":"))]
    for it in report.iterations:
        lines.append(
            json.dumps(
                {
                    "type": "iteration",
                    "iteration": it.iteration,
                    "timesteps": it.timesteps,
                    "mean_reward": it.mean_reward,
                    "max_reward": it.max_reward,
                    "sigma_r": it.sigma_r,
                    "guard_skipped": it.guard_skipped,
                    "eval_reward": it.eval_reward,
                    "wall_time_s": it.wall_time_s,
                },
                separators=(",", ":"),
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def load_train_report_records(path: str | Path) -> tuple[dict, list[dict]]:
    try:
        lines = Path(path).read_text().splitlines()
        records = [json.loads(line) for line in lines if line.strip()]
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptFileError(f"{path}: {exc}") from exc
    if not records or records[0].get("format") != TRAIN_REPORT_FORMAT:
        raise CorruptFileError(f"{path}: not a training report")
    if records[0].get("version") != TRAIN_REPORT_VERSION:
        raise VersionMismatchError(
            f"{path}: unsupported report version {records[0].get('version')!r}"
        )
    return records[0], [r for r in records[1:] if r.get("type") == "iteration"]


def train_report_csv(iterations: list[dict]) -> str:
    """Reward-vs-timestep series as plot-ready CSV."""
    rows = ["iteration,timesteps,mean_reward,max_reward,eval_reward"]
    for it in iterations:
        eval_cell = "" if it.get("eval_reward") is None else repr(it["eval_reward"])
        rows.append(
            f"{it['iteration']},{it['timesteps']},{it['mean_reward']!r},"
            f"{it['max_reward']!r},{eval_cell}"
        )
    return "\n".join(rows) + "\n"


def evaluate(
    policy: LinearPolicy, cfg: EnvConfig, n_episodes: int, seed: int = 0
) -> EvalStats:
    """Run n_episodes with frozen normalization; episode k uses seed + k."""
    rollouts = [
        _run_episode(cfg, policy, seed + k, collect_obs=False, collect_path=True)
        for k in range(n_episodes)
    ]
    rewards = [r.reward for r in rollouts]
    successes = [r.success for r in rollouts]
    arr = np.array(rewards)
    return EvalStats(
        mean=float(arr.mean()),
        std=float(arr.std()),
        max_reward=float(arr.max()),
        min_reward=float(arr.min()),
        reward_range=float(arr.max() - arr.min()),
        success_rate=sum(successes) / n_episodes,
        mean_path_length=float(np.mean([r.path_length for r in rollouts])),
        rewards=rewards,
        successes=successes,
        path_lengths=[r.path_length for r in rollouts],
    )


def wind_sweep(
    policy: LinearPolicy,
    cfg: EnvConfig,
    speeds: Sequence[float],
    angle: float,
) -> SweepReport:
    """Evaluate a (windless-trained) policy across wind speeds at one angle.

    Reports the largest still-succeeding speed and whether success held for
    every tested speed below v_clip/10 (the operating envelope rule).
    """
    rewards: list[float] = []
    successes: list[bool] = []
    for v_a in speeds:
        stats = evaluate(policy, cfg.with_wind(v_a, angle), n_episodes=1)
        rewards.append(stats.mean)
        successes.append(stats.success_rate == 1.0)
    threshold = cfg.v_clip / 10.0
    max_ok = None
    for v_a, ok in zip(speeds, successes):
        if ok and (max_ok is None or v_a > max_ok):
            max_ok = v_a
    return SweepReport(
        angle=angle,
        speeds=list(speeds),
        rewards=rewards,
        successes=successes,
        max_success_speed=max_ok,
        v_clip_over_10=threshold,
        robust_below_v_clip_over_10=all(
            ok for v_a, ok in zip(speeds, successes) if v_a < threshold
        ),
    )
