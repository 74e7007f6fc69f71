import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mbnav import EnvConfig, Point2, RewardConstants, validate_polygon


def square(side: float = 100.0):
    return validate_polygon([(0, 0), (side, 0), (side, side), (0, side)])


def toy_config(**overrides) -> EnvConfig:
    """Single robot on a 100x100 square with one ROI a short push away.

    Small enough for the trainer to crack in seconds, non-trivial enough that
    a zero policy fails (the start is outside the ROI radius).
    """
    kwargs = dict(
        field=square(100.0),
        rois=(Point2(60.0, 50.0),),
        start_positions=(Point2(40.0, 50.0),),
        collision_distance=5.0,
        roi_radius=10.0,
        max_episode_steps=100,
    )
    kwargs.update(overrides)
    return EnvConfig(**kwargs)


def small_config(**overrides) -> EnvConfig:
    """Three robots, three ROIs on a 200x200 square, each ROI near one robot."""
    kwargs = dict(
        field=square(200.0),
        rois=(Point2(70.0, 40.0), Point2(170.0, 100.0), Point2(70.0, 160.0)),
        start_positions=(
            Point2(40.0, 40.0),
            Point2(140.0, 100.0),
            Point2(40.0, 160.0),
        ),
        collision_distance=3.0,
        roi_radius=10.0,
        max_episode_steps=150,
    )
    kwargs.update(overrides)
    return EnvConfig(**kwargs)


def learnable_config(**overrides) -> EnvConfig:
    """3-robot/3-ROI preset tuned for steady desk-scale training curves.

    Fences sit farther than a 40-step episode can travel, so no rollout can
    rack up out-of-field penalties, and the staggered ROI distances (40, 100,
    160) keep full coverage out of reach until the policy is nearly optimal.
    """
    kwargs = dict(
        field=square(800.0),
        rois=(Point2(240.0, 200.0), Point2(600.0, 300.0), Point2(400.0, 440.0)),
        start_positions=(
            Point2(200.0, 200.0),
            Point2(600.0, 200.0),
            Point2(400.0, 600.0),
        ),
        collision_distance=3.0,
        roi_radius=10.0,
        max_episode_steps=40,
    )
    kwargs.update(overrides)
    return EnvConfig(**kwargs)


def two_robot_config(**overrides) -> EnvConfig:
    """Two robots heading for a single shared ROI; collisions are reachable."""
    kwargs = dict(
        field=square(100.0),
        rois=(Point2(50.0, 80.0),),
        start_positions=(Point2(30.0, 20.0), Point2(70.0, 20.0)),
        collision_distance=8.0,
        roi_radius=10.0,
        max_episode_steps=100,
    )
    kwargs.update(overrides)
    return EnvConfig(**kwargs)


@pytest.fixture
def toy_cfg() -> EnvConfig:
    return toy_config()


@pytest.fixture
def small_cfg() -> EnvConfig:
    return small_config()


@pytest.fixture
def two_robot_cfg() -> EnvConfig:
    return two_robot_config()


def strict_rewards() -> RewardConstants:
    return RewardConstants(r_s=1.0, r_m=10.0, r_l=10_000.0, r_terminal=1e6)
