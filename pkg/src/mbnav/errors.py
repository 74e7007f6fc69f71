"""Exception taxonomy shared across the package.

Every error raised by the library derives from MbnavError so callers (and the
CLI exit-code mapping) can distinguish configuration problems, runtime
failures, and replay mismatches.
"""


class MbnavError(Exception):
    """Base class for all library errors."""


class ConfigError(MbnavError):
    """An environment or trainer configuration violates its invariants."""


class PolygonError(ConfigError):
    """A vertex list does not describe a valid simple polygon."""


class TooFewVerticesError(PolygonError):
    pass


class SelfIntersectingError(PolygonError):
    pass


class DegenerateAreaError(PolygonError):
    pass


class DimensionMismatchError(MbnavError):
    """An action's robot count does not match the environment."""


class ShapeMismatchError(MbnavError):
    """Policy/observation shapes are inconsistent with the environment."""


class EpisodeFinishedError(MbnavError):
    """step() was called after the episode terminated."""


class GenerationFailedError(MbnavError):
    """Variation sampling exhausted its retry budget."""


class UnknownPresetError(ConfigError):
    """Preset id outside the documented 1..10 range."""


class VersionMismatchError(ConfigError):
    """A serialized file carries an unsupported format version."""


class CorruptFileError(ConfigError):
    """A serialized file is truncated or structurally invalid."""


class ReplayMismatchError(MbnavError):
    """A recorded trajectory diverged from the re-simulated episode."""

    def __init__(self, step_index: int, detail: str):
        super().__init__(f"replay diverged at step {step_index}: {detail}")
        self.step_index = step_index
        self.detail = detail
