"""Seeded generation of environment variations.

A variation is a random simple polygonal field with start positions and
regions of interest sampled strictly inside it. Candidate vertices are drawn
uniformly in [0, bound]^2 and ordered by angle about their centroid, which
yields a simple (star-shaped) polygon for points in general position; rare
degenerate draws are retried.
"""

from __future__ import annotations

import math

import numpy as np

from .config import EnvConfig
from .errors import (
    ConfigError,
    GenerationFailedError,
    PolygonError,
    UnknownPresetError,
)
from .geometry import (
    Point2,
    Polygon,
    contains,
    distance_to_boundary,
    euclidean_distance,
    validate_polygon,
)

MAX_ROBOTS = 7
MAX_ROIS = 10

_POLYGON_ATTEMPTS = 50
_PLACEMENT_ATTEMPTS = 10_000

# Fixed (seed, n_vertices, bound) tuples behind preset(1) .. preset(10), all
# with 3 robots and 6 ROIs. Preset 3 is constructed on a deliberately smaller
# bound so it has the smallest field area of the ten.
_PRESETS: dict[int, tuple[int, int, float]] = {
    1: (101, 6, 1000.0),
    2: (102, 5, 1000.0),
    3: (103, 5, 420.0),
    4: (104, 7, 1000.0),
    5: (105, 4, 1000.0),
    6: (106, 8, 1000.0),
    7: (107, 6, 1000.0),
    8: (108, 5, 1000.0),
    9: (109, 7, 1000.0),
    10: (110, 4, 1000.0),
}


def _angular_polygon(points: np.ndarray) -> Polygon:
    cx = float(points[:, 0].mean())
    cy = float(points[:, 1].mean())
    order = sorted(
        range(len(points)),
        key=lambda i: math.atan2(points[i, 1] - cy, points[i, 0] - cx),
    )
    return validate_polygon([(float(points[i, 0]), float(points[i, 1])) for i in order])


def _sample_inside(
    rng: np.random.Generator, field: Polygon, margin: float
) -> Point2 | None:
    lo, hi = field.bounding_box()
    for _ in range(_PLACEMENT_ATTEMPTS):
        p = Point2(
            float(rng.uniform(lo.x, hi.x)), float(rng.uniform(lo.y, hi.y))
        )
        if contains(field, p) and distance_to_boundary(field, p) > margin:
            return p
    return None


def generate_variation(
    seed: int,
    n_robots: int = 3,
    n_rois: int = 6,
    bound: float = 1000.0,
    n_vertices: int | None = None,
) -> EnvConfig:
    """Deterministically generate one environment variation.

    Vertex count defaults to a uniform draw in [4, 8]. Start positions keep
    pairwise separation above the collision distance; starts and ROIs land
    strictly inside the field.
    """
    if not 1 <= n_robots <= MAX_ROBOTS:
        raise ConfigError(f"n_robots must be in [1, {MAX_ROBOTS}], got {n_robots}")
    if not 1 <= n_rois <= MAX_ROIS:
        raise ConfigError(f"n_rois must be in [1, {MAX_ROIS}], got {n_rois}")
    if bound <= 0:
        raise ConfigError(f"bound must be positive, got {bound}")

    rng = np.random.default_rng(seed)
    collision_distance = bound / 100.0
    roi_radius = bound / 100.0

    field = None
    for _ in range(_POLYGON_ATTEMPTS):
        k = n_vertices if n_vertices is not None else int(rng.integers(4, 9))
        points = rng.uniform(0.0, bound, size=(k, 2))
        try:
            field = _angular_polygon(points)
            break
        except PolygonError:
            continue
    if field is None:
        raise GenerationFailedError(
            f"no valid field polygon after {_POLYGON_ATTEMPTS} attempts (seed={seed})"
        )

    margin = bound * 1e-6
    starts: list[Point2] = []
    attempts = 0
    while len(starts) < n_robots and attempts < _PLACEMENT_ATTEMPTS:
        attempts += 1
        p = _sample_inside(rng, field, margin)
        if p is None:
            break
        if all(euclidean_distance(p, q) > collision_distance for q in starts):
            starts.append(p)
    if len(starts) != n_robots:
        raise GenerationFailedError(
            f"could not place {n_robots} separated start positions (seed={seed})"
        )

    rois: list[Point2] = []
    for _ in range(n_rois):
        w = _sample_inside(rng, field, margin)
        if w is None:
            raise GenerationFailedError(
                f"could not place {n_rois} ROIs inside the field (seed={seed})"
            )
        rois.append(w)

    return EnvConfig(
        field=field,
        rois=tuple(rois),
        start_positions=tuple(starts),
        collision_distance=collision_distance,
        roi_radius=roi_radius,
        position_bounds=(Point2(0.0, 0.0), Point2(bound, bound)),
    )


def preset(preset_id: int) -> EnvConfig:
    """One of the ten documented fixed variations (3 robots, 6 ROIs)."""
    if preset_id not in _PRESETS:
        raise UnknownPresetError(
            f"preset id must be in 1..10, got {preset_id}"
        )
    seed, k, bound = _PRESETS[preset_id]
    return generate_variation(seed, n_robots=3, n_rois=6, bound=bound, n_vertices=k)
