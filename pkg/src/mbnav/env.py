"""The MDP itself: state/action types, force-driven dynamics with wind and
velocity clipping, ROI-visit bookkeeping via the coverage bitmask, and the
episode lifecycle (reset / step / terminate).

Dynamics per robot, per step:

    v' = v + f / M + (v_a * cos(beta_a), v_a * sin(beta_a))
    clamp each component of v' to [-v_clip, +v_clip]
    p' = p + v' * tau

Termination precedence when several conditions land on the same step:
collision beats full coverage beats the step limit — a colliding path is
infeasible regardless of how much it covered.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import EnvConfig
from .errors import DimensionMismatchError, EpisodeFinishedError
from .geometry import Point2, euclidean_distance
from .rewards import (
    VisitMemory,
    reward_collision,
    reward_field,
    reward_revisit,
    reward_roi,
)


@dataclass(frozen=True)
class State:
    """Robot positions and velocities plus the visited-ROI bitmask."""

    positions: tuple[Point2, ...]
    velocities: tuple[tuple[float, float], ...]
    visited_mask: int
    step_count: int


@dataclass(frozen=True)
class Action:
    """Per-robot (fx, fy) force pairs; clamped to the force bounds in step()."""

    forces: tuple[tuple[float, float], ...]

    @classmethod
    def from_flat(cls, flat: Sequence[float]) -> "Action":
        if len(flat) % 2 != 0:
            raise DimensionMismatchError(
                f"flat action length must be even, got {len(flat)}"
            )
        pairs = tuple(
            (float(flat[2 * i]), float(flat[2 * i + 1]))
            for i in range(len(flat) // 2)
        )
        return cls(pairs)

    def flat(self) -> list[float]:
        return [c for pair in self.forces for c in pair]


class TerminationCause(enum.Enum):
    RUNNING = "Running"
    ALL_ROIS_VISITED = "AllRoisVisited"
    COLLISION = "Collision"
    STEP_LIMIT = "StepLimit"


@dataclass(frozen=True)
class StepOutcome:
    """One transition: next state, scalar reward, component breakdown, and
    termination. reward equals sum(breakdown) on every step; on Collision /
    AllRoisVisited the breakdown collapses to the signed terminal bonus."""

    next_state: State
    reward: float
    breakdown: tuple[float, float, float, float]
    terminated: bool
    cause: TerminationCause


def encode_visited(flags: Sequence[bool]) -> int:
    """Pack visit flags into an integer, first region as the most significant
    bit: with five regions, regions {1, 3} visited reads 10100 = 20."""
    m = len(flags)
    mask = 0
    for i, visited in enumerate(flags):
        if visited:
            mask |= 1 << (m - 1 - i)
    return mask


def decode_visited(mask: int, m: int) -> list[bool]:
    return [bool(mask & (1 << (m - 1 - i))) for i in range(m)]


def roi_hits(
    positions: Sequence[Point2],
    rois: Sequence[Point2],
    roi_radius: float,
    visited_mask: int,
) -> set[int]:
    """Indices of not-yet-visited regions with some robot within roi_radius."""
    m = len(rois)
    hits = set()
    for j, w in enumerate(rois):
        if visited_mask & (1 << (m - 1 - j)):
            continue
        for p in positions:
            if euclidean_distance(p, w) <= roi_radius:
                hits.add(j)
                break
    return hits


def apply_dynamics(state: State, action: Action, cfg: EnvConfig) -> State:
    """Pure transition: forces and wind update velocities (then clipped), and
    the clipped velocities move the positions. Visit detection lives in
    Env.step(), not here."""
    n = len(state.positions)
    if len(action.forces) != n:
        raise DimensionMismatchError(
            f"action has {len(action.forces)} force pairs for {n} robots"
        )
    wind_speed, wind_angle = cfg.wind
    wx = wind_speed * math.cos(wind_angle)
    wy = wind_speed * math.sin(wind_angle)
    clip = cfg.v_clip
    mass = cfg.robot_mass
    tau = cfg.tau

    positions = []
    velocities = []
    for i in range(n):
        fx, fy = action.forces[i]
        vx, vy = state.velocities[i]
        vx = vx + fx / mass + wx
        vy = vy + fy / mass + wy
        vx = min(clip, max(-clip, vx))
        vy = min(clip, max(-clip, vy))
        p = state.positions[i]
        positions.append(Point2(p.x + vx * tau, p.y + vy * tau))
        velocities.append((vx, vy))

    return State(
        positions=tuple(positions),
        velocities=tuple(velocities),
        visited_mask=state.visited_mask,
        step_count=state.step_count + 1,
    )


def observation_vector(state: State, cfg: EnvConfig) -> np.ndarray:
    """Flatten a state to [x1, y1, .., xn, yn, vx1, vy1, .., vxn, vyn, mask]."""
    n = cfg.n_robots
    obs = np.empty(4 * n + 1, dtype=np.float64)
    k = 0
    for p in state.positions:
        obs[k] = p.x
        obs[k + 1] = p.y
        k += 2
    for vx, vy in state.velocities:
        obs[k] = vx
        obs[k + 1] = vy
        k += 2
    obs[k] = float(state.visited_mask)
    return obs


def parse_observation(obs: Sequence[float], cfg: EnvConfig, step_count: int = 0) -> State:
    """Inverse of observation_vector (step_count is not part of the vector)."""
    n = cfg.n_robots
    if len(obs) != 4 * n + 1:
        raise DimensionMismatchError(
            f"observation length {len(obs)} != {4 * n + 1}"
        )
    positions = tuple(Point2(float(obs[2 * i]), float(obs[2 * i + 1])) for i in range(n))
    velocities = tuple(
        (float(obs[2 * n + 2 * i]), float(obs[2 * n + 2 * i + 1])) for i in range(n)
    )
    return State(positions, velocities, int(obs[4 * n]), step_count)


def _clamp_action(action: Action, cfg: EnvConfig) -> Action:
    fxmin, fxmax, fymin, fymax = cfg.force_bounds
    return Action(
        tuple(
            (min(fxmax, max(fxmin, fx)), min(fymax, max(fymin, fy)))
            for fx, fy in action.forces
        )
    )


class Env:
    """One episode-at-a-time environment instance.

    Mutable episode state lives here; the config is shared and immutable, so
    distinct Env instances over one config may run in parallel. The instance
    RNG is seeded on reset and recorded in trajectories; current dynamics are
    fully deterministic and do not consume it.
    """

    def __init__(self, cfg: EnvConfig, seed: int = 0):
        self.cfg = cfg
        self.seed = seed
        self.rng = random.Random(seed)
        self._state: State | None = None
        self._memory = VisitMemory()
        self._cause = TerminationCause.RUNNING
        self.reset(seed)

    @property
    def state(self) -> State:
        assert self._state is not None
        return self._state

    @property
    def terminated(self) -> bool:
        return self._cause is not TerminationCause.RUNNING

    @property
    def cause(self) -> TerminationCause:
        return self._cause

    def reset(self, seed: int | None = None) -> State:
        """Robots at their start positions, zero velocity, empty coverage mask
        and revisit memory. ROI visit detection happens in step(), so a start
        position sitting on an ROI is registered at step 1, not here."""
        if seed is not None:
            self.seed = seed
        self.rng = random.Random(self.seed)
        self._memory.clear()
        self._cause = TerminationCause.RUNNING
        self._state = State(
            positions=self.cfg.start_positions,
            velocities=tuple((0.0, 0.0) for _ in range(self.cfg.n_robots)),
            visited_mask=0,
            step_count=0,
        )
        return self._state

    def observation(self) -> np.ndarray:
        return observation_vector(self.state, self.cfg)

    def step(self, action: Action | Sequence[float]) -> StepOutcome:
        """Advance one step: clamp forces, apply dynamics, score the
        post-transition state, fold new ROI hits into the mask, terminate on
        collision / full coverage / step limit (in that precedence)."""
        if self.terminated:
            raise EpisodeFinishedError(
                f"episode already terminated ({self._cause.value}); call reset()"
            )
        if not isinstance(action, Action):
            action = Action.from_flat(action)
        cfg = self.cfg
        consts = cfg.rewards

        clamped = _clamp_action(action, cfg)
        moved = apply_dynamics(self.state, clamped, cfg)

        r_c = reward_collision(
            moved.positions, cfg.collision_distance, consts.r_terminal
        )
        hits = roi_hits(moved.positions, cfg.rois, cfg.roi_radius, moved.visited_mask)
        m = cfg.n_rois
        mask_after = moved.visited_mask
        for j in hits:
            mask_after |= 1 << (m - 1 - j)
        r_i = reward_roi(hits, mask_after, m, consts)
        r_f = reward_field(moved.positions, cfg.field, consts)
        r_v = reward_revisit(self._memory, moved.positions, consts)

        next_state = State(
            positions=moved.positions,
            velocities=moved.velocities,
            visited_mask=mask_after,
            step_count=moved.step_count,
        )

        if r_c < 0.0:
            cause = TerminationCause.COLLISION
            reward = -consts.r_terminal
            breakdown = (-consts.r_terminal, 0.0, 0.0, 0.0)
        elif mask_after == cfg.full_mask:
            cause = TerminationCause.ALL_ROIS_VISITED
            reward = consts.r_terminal
            breakdown = (0.0, consts.r_terminal, 0.0, 0.0)
        else:
            if next_state.step_count >= cfg.max_episode_steps:
                cause = TerminationCause.STEP_LIMIT
            else:
                cause = TerminationCause.RUNNING
            reward = r_c + r_i + r_f + r_v
            breakdown = (r_c, r_i, r_f, r_v)

        self._state = next_state
        self._cause = cause
        return StepOutcome(
            next_state=next_state,
            reward=reward,
            breakdown=breakdown,
            terminated=cause is not TerminationCause.RUNNING,
            cause=cause,
        )


def reset(cfg: EnvConfig, seed: int) -> Env:
    """Construct a fresh environment; mirrors Env(cfg, seed)."""
    return Env(cfg, seed)
