"""Episodic five-tuple bindings over the mbnav environment core."""

from .env import EpisodeEnv, make_env, reset, step
from .spaces import BoxSpace

__version__ = "0.1.0"

__all__ = ["BoxSpace", "EpisodeEnv", "make_env", "reset", "step"]
