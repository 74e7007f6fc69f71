"""Deterministic continuous-control multi-robot navigation MDP.

Force-driven point-mass robots on a polygonal field must visit every region
of interest while avoiding collisions, under an optional constant wind.
Ships with an Augmented Random Search trainer, an evaluation harness, a
wind-robustness sweep, trajectory recording/replay, and a CLI.
"""

from .config import EnvConfig, config_hash, load_config, save_config
from .env import (
    Action,
    Env,
    State,
    StepOutcome,
    TerminationCause,
    apply_dynamics,
    encode_visited,
    decode_visited,
    observation_vector,
    parse_observation,
    reset,
    roi_hits,
)
from .errors import (
    ConfigError,
    CorruptFileError,
    DegenerateAreaError,
    DimensionMismatchError,
    EpisodeFinishedError,
    GenerationFailedError,
    MbnavError,
    PolygonError,
    ReplayMismatchError,
    SelfIntersectingError,
    ShapeMismatchError,
    TooFewVerticesError,
    UnknownPresetError,
    VersionMismatchError,
)
from .geometry import Point2, Polygon, contains, euclidean_distance, validate_polygon
from .policy import LinearPolicy, RunningStats, load_policy, save_policy, update_normalization
from .rewards import (
    RewardConstants,
    VisitMemory,
    reward_collision,
    reward_field,
    reward_revisit,
    reward_roi,
)
from .trainer import (
    ArsConfig,
    EvalStats,
    IterationRecord,
    IterationStats,
    SweepReport,
    TrainReport,
    ars_train,
    compute_update,
    evaluate,
    save_train_report,
    wind_sweep,
)
from .trajectory import (
    Trajectory,
    TrajectoryRecorder,
    TrajectoryStep,
    export_trajectory,
    load_trajectory,
    record_episode,
    replay,
    trajectory_to_csv,
)
from .variation import generate_variation, preset

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ArsConfig",
    "ConfigError",
    "CorruptFileError",
    "DegenerateAreaError",
    "DimensionMismatchError",
    "Env",
    "EnvConfig",
    "EpisodeFinishedError",
    "EvalStats",
    "GenerationFailedError",
    "IterationRecord",
    "IterationStats",
    "LinearPolicy",
    "MbnavError",
    "Point2",
    "Polygon",
    "PolygonError",
    "ReplayMismatchError",
    "RewardConstants",
    "RunningStats",
    "SelfIntersectingError",
    "ShapeMismatchError",
    "State",
    "StepOutcome",
    "SweepReport",
    "TerminationCause",
    "TooFewVerticesError",
    "TrainReport",
    "Trajectory",
    "TrajectoryRecorder",
    "TrajectoryStep",
    "UnknownPresetError",
    "VersionMismatchError",
    "VisitMemory",
    "apply_dynamics",
    "ars_train",
    "compute_update",
    "config_hash",
    "contains",
    "decode_visited",
    "encode_visited",
    "euclidean_distance",
    "evaluate",
    "export_trajectory",
    "generate_variation",
    "load_config",
    "load_policy",
    "load_trajectory",
    "observation_vector",
    "parse_observation",
    "preset",
    "record_episode",
    "replay",
    "reset",
    "reward_collision",
    "reward_field",
    "reward_revisit",
    "reward_roi",
    "roi_hits",
    "save_config",
    "save_policy",
    "save_train_report",
    "trajectory_to_csv",
    "update_normalization",
    "validate_polygon",
    "wind_sweep",
]
