"""Command-line entry point.

Subcommands: gen | train | eval | sweep | replay | report. All randomness
flows from explicit --seed flags. Exit codes: 0 success, 2 configuration
error, 4 replay mismatch, 3 any other runtime failure; errors print one
machine-readable line to stderr (category=config|runtime|replay-mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import EnvConfig, load_config, save_config
from .errors import ConfigError, MbnavError, ReplayMismatchError, ShapeMismatchError
from .policy import LinearPolicy, load_policy, save_policy
from .trainer import (
    ArsConfig,
    ars_train,
    evaluate,
    load_train_report_records,
    save_train_report,
    train_report_csv,
    wind_sweep,
)
from .trajectory import (
    export_trajectory,
    load_trajectory,
    record_episode,
    replay,
    trajectory_to_csv,
)
from .variation import generate_variation

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_REPLAY = 4


def _episode_paths(base: Path, n_episodes: int) -> list[Path]:
    if n_episodes == 1:
        return [base]
    return [base.with_name(f"{base.stem}.ep{k}{base.suffix}") for k in range(n_episodes)]


def _resolve_policy(arg: str | None, cfg: EnvConfig) -> LinearPolicy:
    """--policy defaults to a zero-initialized policy for the environment."""
    if arg is None or arg == "zero":
        return LinearPolicy.zeros(cfg.n_robots, cfg.n_rois)
    policy = load_policy(arg, expected_n=cfg.n_robots)
    if policy.n_rois != cfg.n_rois:
        raise ShapeMismatchError(
            f"policy trained for m={policy.n_rois}, environment has m={cfg.n_rois}"
        )
    return policy


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = generate_variation(
        seed=args.seed, n_robots=args.robots, n_rois=args.rois, bound=args.bound
    )
    save_config(cfg, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_train(args: argparse.Namespace) -> int:
    cfg = load_config(args.env)
    if args.ars_config is not None:
        try:
            ars = ArsConfig(**json.loads(Path(args.ars_config).read_text()))
        except (TypeError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{args.ars_config}: {exc}") from exc
    else:
        ars = ArsConfig()
    policy, report = ars_train(cfg, ars)
    save_policy(policy, args.out_policy)
    save_train_report(report, args.out_report)
    summary = {
        "iterations": len(report.iterations),
        "total_timesteps": report.total_timesteps,
        "best_reward": report.best_reward,
        "final_mean_reward": report.iterations[-1].mean_reward,
    }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = load_config(args.env)
    policy = _resolve_policy(args.policy, cfg)
    stats = evaluate(policy, cfg, n_episodes=args.episodes, seed=args.seed)
    if args.out_traj is not None:
        for k, path in enumerate(_episode_paths(Path(args.out_traj), args.episodes)):
            traj = record_episode(cfg, policy, seed=args.seed + k)
            export_trajectory(traj, path)
            if args.csv:
                trajectory_to_csv(traj, path.with_suffix(".csv"))
    print(
        json.dumps(
            {
                "mean": stats.mean,
                "std": stats.std,
                "max": stats.max_reward,
                "min": stats.min_reward,
                "range": stats.reward_range,
                "success_rate": stats.success_rate,
                "mean_path_length": stats.mean_path_length,
            }
        )
    )
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = load_config(args.env)
    policy = _resolve_policy(args.policy, cfg)
    speeds = [float(s) for s in args.speeds.split(",") if s.strip()]
    if not speeds:
        raise ConfigError("--speeds must list at least one wind speed")
    report = wind_sweep(policy, cfg, speeds, angle=args.angle)
    print(
        json.dumps(
            {
                "angle": report.angle,
                "speeds": report.speeds,
                "rewards": report.rewards,
                "successes": report.successes,
                "max_success_speed": report.max_success_speed,
                "v_clip_over_10": report.v_clip_over_10,
                "robust_below_v_clip_over_10": report.robust_below_v_clip_over_10,
            }
        )
    )
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    cfg = load_config(args.env)
    traj = load_trajectory(args.traj)
    replay(traj, cfg)
    print(f"replay ok: {len(traj.steps)} steps, total reward {traj.total_reward}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    _header, iterations = load_train_report_records(args.train_report)
    Path(args.out).write_text(train_report_csv(iterations))
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbnav",
        description="Multi-robot navigation MDP: generate, train, evaluate, replay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random environment variation")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--robots", type=int, default=3)
    p.add_argument("--rois", type=int, default=6)
    p.add_argument("--bound", type=float, default=1000.0)
    p.add_argument("--out", required=True, help="output environment config path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="train a linear policy with ARS")
    p.add_argument("--env", required=True, help="environment config path")
    p.add_argument("--ars-config", help="JSON file with ArsConfig fields")
    p.add_argument("--out-policy", required=True)
    p.add_argument("--out-report", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a policy")
    p.add_argument("--env", required=True)
    p.add_argument("--policy", help="policy file, or 'zero' (default) for a zero policy")
    p.add_argument("--episodes", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-traj", help="export episode trajectories to this path")
    p.add_argument("--csv", action="store_true", help="also write CSV next to each trajectory")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="wind-robustness sweep of a trained policy")
    p.add_argument("--env", required=True)
    p.add_argument("--policy", help="policy file, or 'zero' (default)")
    p.add_argument("--speeds", required=True, help="comma-separated wind speeds")
    p.add_argument("--angle", type=float, default=0.0, help="wind angle in radians")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("replay", help="verify a recorded trajectory bitwise")
    p.add_argument("--traj", required=True)
    p.add_argument("--env", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("report", help="flatten a training report to plot-ready CSV")
    p.add_argument("--train-report", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ReplayMismatchError as exc:
        print(f"mbnav: category=replay-mismatch: {exc}", file=sys.stderr)
        return EXIT_REPLAY
    except (ConfigError, ShapeMismatchError) as exc:
        print(f"mbnav: category=config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MbnavError, OSError) as exc:
        print(f"mbnav: category=runtime: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
