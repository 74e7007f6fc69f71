"""Thin reset/step episodic bindings over the native environment.

The handle wraps one native Env; no environment logic is reimplemented here.
step() follows the standard five-tuple convention: `terminated` covers the
MDP's own terminal states (collision, full coverage) and `truncated` covers
the step-limit cutoff. Native exceptions propagate unchanged, so the error
categories map 1:1.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from mbnav import Env, EnvConfig, TerminationCause, load_config

from .spaces import BoxSpace


class EpisodeEnv:
    """One episode-at-a-time handle over a native environment."""

    def __init__(self, cfg: EnvConfig):
        self.cfg = cfg
        self._env = Env(cfg, seed=0)
        self.observation_space = _observation_space(cfg)
        self.action_space = _action_space(cfg)

    @property
    def n_robots(self) -> int:
        return self.cfg.n_robots

    @property
    def n_rois(self) -> int:
        return self.cfg.n_rois

    def reset(self, seed: int = 0) -> np.ndarray:
        self._env.reset(seed)
        return self._env.observation()

    def step(
        self, action: Sequence[float]
    ) -> tuple[np.ndarray, float, bool, bool, dict]:
        outcome = self._env.step(np.asarray(action, dtype=np.float64).tolist())
        truncated = outcome.cause is TerminationCause.STEP_LIMIT
        terminated = outcome.terminated and not truncated
        info = {
            "breakdown": outcome.breakdown,
            "cause": outcome.cause.value,
            "visited_mask": outcome.next_state.visited_mask,
        }
        return self._env.observation(), outcome.reward, terminated, truncated, info


def _observation_space(cfg: EnvConfig) -> BoxSpace:
    n = cfg.n_robots
    lo_p, hi_p = cfg.position_bounds
    low = np.empty(4 * n + 1, dtype=np.float64)
    high = np.empty(4 * n + 1, dtype=np.float64)
    for i in range(n):
        low[2 * i], low[2 * i + 1] = lo_p.x, lo_p.y
        high[2 * i], high[2 * i + 1] = hi_p.x, hi_p.y
    low[2 * n : 4 * n] = -cfg.v_clip
    high[2 * n : 4 * n] = cfg.v_clip
    low[4 * n] = 0.0
    high[4 * n] = float(cfg.full_mask)
    return BoxSpace(low=low, high=high)


def _action_space(cfg: EnvConfig) -> BoxSpace:
    fxmin, fxmax, fymin, fymax = cfg.force_bounds
    low = np.tile(np.array([fxmin, fymin]), cfg.n_robots)
    high = np.tile(np.array([fxmax, fymax]), cfg.n_robots)
    return BoxSpace(low=low, high=high)


def make_env(config_path: str | Path) -> EpisodeEnv:
    """Build a handle from an environment config file."""
    return EpisodeEnv(load_config(config_path))


def reset(handle: EpisodeEnv, seed: int = 0) -> np.ndarray:
    return handle.reset(seed)


def step(handle: EpisodeEnv, action: Sequence[float]):
    return handle.step(action)
