"""Immutable environment definition plus its JSON file format.

The on-disk schema uses the field names below verbatim; coordinates are
[x, y] pairs and angles are radians. See README for a worked example.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import ConfigError, CorruptFileError, VersionMismatchError
from .geometry import Point2, Polygon, contains, euclidean_distance, validate_polygon
from .rewards import RewardConstants

CONFIG_FORMAT = "mbnav-env-config"
CONFIG_VERSION = 1

MAX_ROIS = 10


@dataclass(frozen=True)
class EnvConfig:
    """Everything that defines one environment variation.

    force_bounds is (f_x_min, f_x_max, f_y_min, f_y_max); wind is
    (speed, angle_radians) applied as a constant additive velocity each step;
    position_bounds defaults to the field's bounding box and is advisory
    (robots may leave the field, at a penalty).
    """

    field: Polygon
    rois: tuple[Point2, ...]
    start_positions: tuple[Point2, ...]
    collision_distance: float
    robot_mass: float = 1.0
    tau: float = 1.0
    roi_radius: float = 10.0
    force_bounds: tuple[float, float, float, float] = (-1.0, 1.0, -1.0, 1.0)
    v_clip: float = 5.0
    wind: tuple[float, float] = (0.0, 0.0)
    rewards: RewardConstants = dc_field(default_factory=RewardConstants)
    max_episode_steps: int = 1000
    position_bounds: tuple[Point2, Point2] | None = None

    def __post_init__(self):
        if self.position_bounds is None:
            object.__setattr__(self, "position_bounds", self.field.bounding_box())
        self.validate()

    @property
    def n_robots(self) -> int:
        return len(self.start_positions)

    @property
    def n_rois(self) -> int:
        return len(self.rois)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_rois) - 1

    @property
    def observation_dim(self) -> int:
        return 4 * self.n_robots + 1

    @property
    def action_dim(self) -> int:
        return 2 * self.n_robots

    def validate(self) -> None:
        """Raise ConfigError naming the first violated invariant."""
        if not isinstance(self.field, Polygon):
            raise ConfigError("field must be a validated Polygon")
        if not 1 <= self.n_rois <= MAX_ROIS:
            raise ConfigError(
                f"number of ROIs must be in [1, {MAX_ROIS}], got {self.n_rois}"
            )
        if self.n_robots < 1:
            raise ConfigError("need at least one start position")
        for i, w in enumerate(self.rois):
            if not contains(self.field, w):
                raise ConfigError(f"ROI {i} at ({w.x}, {w.y}) is outside the field")
        for i, p in enumerate(self.start_positions):
            if not contains(self.field, p):
                raise ConfigError(
                    f"start position {i} at ({p.x}, {p.y}) is outside the field"
                )
        for i in range(self.n_robots):
            for j in range(i + 1, self.n_robots):
                d = euclidean_distance(
                    self.start_positions[i], self.start_positions[j]
                )
                if d <= self.collision_distance:
                    raise ConfigError(
                        f"start positions {i} and {j} are {d} apart, within the "
                        f"collision distance {self.collision_distance}"
                    )
        for name in ("collision_distance", "robot_mass", "tau", "roi_radius", "v_clip"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        fxmin, fxmax, fymin, fymax = self.force_bounds
        if fxmin > fxmax or fymin > fymax:
            raise ConfigError(f"force_bounds min > max: {self.force_bounds}")
        speed, _angle = self.wind
        if speed < 0:
            raise ConfigError(f"wind speed must be >= 0, got {speed}")
        if self.max_episode_steps < 1:
            raise ConfigError(
                f"max_episode_steps must be >= 1, got {self.max_episode_steps}"
            )
        lo, hi = self.position_bounds
        if lo.x > hi.x or lo.y > hi.y:
            raise ConfigError("position_bounds min exceeds max")

    def with_wind(self, speed: float, angle: float) -> "EnvConfig":
        """Copy of this config with the wind replaced."""
        return EnvConfig(
            field=self.field,
            rois=self.rois,
            start_positions=self.start_positions,
            collision_distance=self.collision_distance,
            robot_mass=self.robot_mass,
            tau=self.tau,
            roi_radius=self.roi_radius,
            force_bounds=self.force_bounds,
            v_clip=self.v_clip,
            wind=(speed, angle),
            rewards=self.rewards,
            max_episode_steps=self.max_episode_steps,
            position_bounds=self.position_bounds,
        )

    def to_dict(self) -> dict:
        lo, hi = self.position_bounds
        return {
            "format": CONFIG_FORMAT,
            "version": CONFIG_VERSION,
            "field": [[v.x, v.y] for v in self.field.vertices],
            "rois": [[w.x, w.y] for w in self.rois],
            "start_positions": [[p.x, p.y] for p in self.start_positions],
            "robot_mass": self.robot_mass,
            "tau": self.tau,
            "collision_distance": self.collision_distance,
            "roi_radius": self.roi_radius,
            "force_bounds": list(self.force_bounds),
            "v_clip": self.v_clip,
            "wind": {"speed": self.wind[0], "angle": self.wind[1]},
            "rewards": {
                "r_s": self.rewards.r_s,
                "r_m": self.rewards.r_m,
                "r_l": self.rewards.r_l,
                "R_terminal": self.rewards.r_terminal,
            },
            "max_episode_steps": self.max_episode_steps,
            "position_bounds": [[lo.x, lo.y], [hi.x, hi.y]],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EnvConfig":
        try:
            if data.get("format") != CONFIG_FORMAT:
                raise CorruptFileError(
                    f"not an environment config (format={data.get('format')!r})"
                )
            if data.get("version") != CONFIG_VERSION:
                raise VersionMismatchError(
                    f"unsupported config version {data.get('version')!r}"
                )
            rw = data["rewards"]
            lo, hi = data["position_bounds"]
            wind = data.get("wind", {"speed": 0.0, "angle": 0.0})  # default: calm
            return cls(
                field=validate_polygon([tuple(v) for v in data["field"]]),
                rois=tuple(Point2(*w) for w in data["rois"]),
                start_positions=tuple(Point2(*p) for p in data["start_positions"]),
                collision_distance=float(data["collision_distance"]),
                robot_mass=float(data["robot_mass"]),
                tau=float(data["tau"]),
                roi_radius=float(data["roi_radius"]),
                force_bounds=tuple(float(b) for b in data["force_bounds"]),
                v_clip=float(data["v_clip"]),
                wind=(float(wind["speed"]), float(wind["angle"])),
                rewards=RewardConstants(
                    r_s=float(rw["r_s"]),
                    r_m=float(rw["r_m"]),
                    r_l=float(rw["r_l"]),
                    r_terminal=float(rw["R_terminal"]),
                ),
                max_episode_steps=int(data["max_episode_steps"]),
                position_bounds=(Point2(*lo), Point2(*hi)),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise CorruptFileError(f"malformed environment config: {exc}") from exc


def save_config(cfg: EnvConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2) + "\n")


def load_config(path: str | Path) -> EnvConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CorruptFileError(f"{path}: {exc}") from exc
    return EnvConfig.from_dict(data)


def config_hash(cfg: EnvConfig) -> str:
    """Stable content hash used to pair trajectories with their config."""
    canonical = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()
