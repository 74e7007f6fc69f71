"""The four per-step reward components and the episode revisit memory.

Sign conventions: collision and out-of-field are penalties, reaching a region
of interest pays r_l each (the run that completes coverage pays the terminal
bonus instead), staying in the field costs r_s per step, and landing in a
never-visited position cell refunds r_s while a revisit costs r_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigError
from .geometry import Point2, Polygon, contains, euclidean_distance


@dataclass(frozen=True)
class RewardConstants:
    """Small/medium/large shaping magnitudes plus the finitized terminal bonus."""

    r_s: float = 1.0
    r_m: float = 10.0
    r_l: float = 10_000.0
    r_terminal: float = 1e6

    def __post_init__(self):
        if not (0 < self.r_s < self.r_m < self.r_l < self.r_terminal):
            raise ConfigError(
                "reward constants must satisfy 0 < r_s < r_m < r_l < R_terminal, got "
                f"r_s={self.r_s}, r_m={self.r_m}, r_l={self.r_l}, "
                f"R_terminal={self.r_terminal}"
            )


class VisitMemory:
    """Episode-local set of visited joint-position grid cells.

    States are keyed by the concatenated per-robot cells of side cell_size;
    velocities and the coverage bitmask are deliberately excluded so loitering
    is penalized regardless of speed. Insertion-only between resets.
    """

    def __init__(self, cell_size: float = 10.0):
        if cell_size <= 0:
            raise ConfigError(f"cell_size must be positive, got {cell_size}")
        self.cell_size = cell_size
        self._cells: set[tuple[int, ...]] = set()

    def __len__(self) -> int:
        return len(self._cells)

    def key(self, positions: Sequence[Point2]) -> tuple[int, ...]:
        k = []
        for p in positions:
            k.append(math.floor(p.x / self.cell_size))
            k.append(math.floor(p.y / self.cell_size))
        return tuple(k)

    def seen(self, key: tuple[int, ...]) -> bool:
        return key in self._cells

    def insert(self, key: tuple[int, ...]) -> None:
        self._cells.add(key)

    def clear(self) -> None:
        self._cells.clear()


def reward_collision(
    positions: Sequence[Point2], collision_distance: float, r_terminal: float
) -> float:
    """-R_terminal if any robot pair is within the safety distance, else 0.

    Distance exactly equal to the safety distance is a violation: feasible
    paths require strictly greater separation.
    """
    n = len(positions)
    for i in range(n):
        for j in range(i + 1, n):
            if euclidean_distance(positions[i], positions[j]) <= collision_distance:
                return -r_terminal
    return 0.0


def reward_roi(
    newly_hit: set[int], mask_after: int, m: int, consts: RewardConstants
) -> float:
    """+R_terminal when coverage completes, else r_l per newly reached region."""
    if mask_after == (1 << m) - 1:
        return consts.r_terminal
    return consts.r_l * len(newly_hit)


def reward_field(
    positions: Sequence[Point2], field: Polygon, consts: RewardConstants
) -> float:
    """-r_l per robot outside the field; -r_s flat when all are inside."""
    outside = sum(1 for p in positions if not contains(field, p))
    if outside >= 1:
        return -consts.r_l * outside
    return -consts.r_s


def reward_revisit(
    memory: VisitMemory, next_positions: Sequence[Point2], consts: RewardConstants
) -> float:
    """-r_m if the joint-position cell was seen this episode, else +r_s.

    Novel cells are inserted into the memory as a side effect.
    """
    key = memory.key(next_positions)
    if memory.seen(key):
        return -consts.r_m
    memory.insert(key)
    return consts.r_s
