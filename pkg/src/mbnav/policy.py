"""Deterministic linear policies over online-normalized observations.

The trainer optimizes a single weight matrix of shape (2n, 4n+1); actions are
the matrix product with the whitened observation, clamped to the force box.
Normalization statistics update only during training rollouts and are frozen
at evaluation/inference.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .env import Action
from .errors import CorruptFileError, ShapeMismatchError, VersionMismatchError

POLICY_FORMAT = "mbnav-policy"
POLICY_VERSION = 1

NORM_EPS = 1e-8


class RunningStats:
    """Welford online mean/variance over fixed-length vectors.

    Variance is the population variance (M2 / count). With no observations
    the stats are an identity transform; with few observations the NORM_EPS
    guard keeps the whitening denominator finite.
    """

    def __init__(self, dim: int):
        self.count = 0
        self.mean = np.zeros(dim, dtype=np.float64)
        self.m2 = np.zeros(dim, dtype=np.float64)

    def update(self, x: np.ndarray) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)

    @property
    def variance(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros_like(self.m2)
        return self.m2 / self.count

    def normalize(self, x: np.ndarray) -> np.ndarray:
        if self.count == 0:
            return x
        return (x - self.mean) / np.sqrt(self.variance + NORM_EPS)

    def copy(self) -> "RunningStats":
        out = RunningStats(len(self.mean))
        out.count = self.count
        out.mean = self.mean.copy()
        out.m2 = self.m2.copy()
        return out


class LinearPolicy:
    """Weight matrix plus observation-normalization statistics."""

    def __init__(self, weights: np.ndarray, n_robots: int, n_rois: int,
                 stats: RunningStats | None = None):
        weights = np.asarray(weights, dtype=np.float64)
        expected = (2 * n_robots, 4 * n_robots + 1)
        if weights.shape != expected:
            raise ShapeMismatchError(
                f"weights shape {weights.shape} != {expected} for n={n_robots}"
            )
        self.weights = weights
        self.n_robots = n_robots
        self.n_rois = n_rois
        self.stats = stats if stats is not None else RunningStats(weights.shape[1])
        if len(self.stats.mean) != weights.shape[1]:
            raise ShapeMismatchError(
                f"normalization dim {len(self.stats.mean)} != {weights.shape[1]}"
            )

    @classmethod
    def zeros(cls, n_robots: int, n_rois: int) -> "LinearPolicy":
        return cls(
            np.zeros((2 * n_robots, 4 * n_robots + 1)), n_robots, n_rois
        )

    @property
    def norm_mean(self) -> np.ndarray:
        return self.stats.mean

    @property
    def norm_var(self) -> np.ndarray:
        return self.stats.variance

    @property
    def obs_count(self) -> int:
        return self.stats.count

    def act(self, obs: Sequence[float],
            force_bounds: tuple[float, float, float, float]) -> Action:
        """Whiten the observation, apply the weights, clamp to the force box.

        Until the first normalization update the observation passes through
        unwhitened (there is no meaningful mean/variance yet).
        """
        obs = np.asarray(obs, dtype=np.float64)
        if obs.shape != (self.weights.shape[1],):
            raise ShapeMismatchError(
                f"observation shape {obs.shape} != ({self.weights.shape[1]},)"
            )
        raw = self.weights @ self.stats.normalize(obs)
        fxmin, fxmax, fymin, fymax = force_bounds
        forces = []
        for i in range(self.n_robots):
            fx = min(fxmax, max(fxmin, float(raw[2 * i])))
            fy = min(fymax, max(fymin, float(raw[2 * i + 1])))
            forces.append((fx, fy))
        return Action(tuple(forces))

    def observe(self, obs: Sequence[float]) -> "LinearPolicy":
        """Fold one raw observation into the normalization statistics."""
        obs = np.asarray(obs, dtype=np.float64)
        if obs.shape != (self.weights.shape[1],):
            raise ShapeMismatchError(
                f"observation shape {obs.shape} != ({self.weights.shape[1]},)"
            )
        self.stats.update(obs)
        return self

    def perturbed(self, delta: np.ndarray) -> "LinearPolicy":
        """Policy with shifted weights sharing these (read-only) statistics."""
        return LinearPolicy(
            self.weights + delta, self.n_robots, self.n_rois, stats=self.stats
        )


def update_normalization(policy: LinearPolicy, obs: Sequence[float]) -> LinearPolicy:
    return policy.observe(obs)


def save_policy(policy: LinearPolicy, path: str | Path) -> None:
    data = {
        "format": POLICY_FORMAT,
        "version": POLICY_VERSION,
        "n": policy.n_robots,
        "m": policy.n_rois,
        "weights": policy.weights.tolist(),
        "norm_mean": policy.stats.mean.tolist(),
        "norm_m2": policy.stats.m2.tolist(),
        "obs_count": policy.stats.count,
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def load_policy(path: str | Path, expected_n: int | None = None) -> LinearPolicy:
    """Load a policy file; checks the version header and, when expected_n is
    given, that the stored robot count matches."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CorruptFileError(f"{path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("format") != POLICY_FORMAT:
        raise CorruptFileError(f"{path}: not a policy file")
    if data.get("version") != POLICY_VERSION:
        raise VersionMismatchError(
            f"{path}: unsupported policy version {data.get('version')!r}"
        )
    try:
        n = int(data["n"])
        m = int(data["m"])
        weights = np.asarray(data["weights"], dtype=np.float64)
        stats = RunningStats(4 * n + 1)
        stats.count = int(data["obs_count"])
        stats.mean = np.asarray(data["norm_mean"], dtype=np.float64)
        stats.m2 = np.asarray(data["norm_m2"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFileError(f"{path}: malformed policy file: {exc}") from exc
    if expected_n is not None and n != expected_n:
        raise ShapeMismatchError(
            f"{path}: policy trained for n={n}, environment has n={expected_n}"
        )
    if stats.mean.shape != (4 * n + 1,) or stats.m2.shape != (4 * n + 1,):
        raise CorruptFileError(f"{path}: normalization vectors have wrong length")
    return LinearPolicy(weights, n, m, stats=stats)
