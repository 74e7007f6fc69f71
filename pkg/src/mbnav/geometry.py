"""2-D primitives: points, simple polygons, distances, and containment.

Containment uses ray casting with a boundary tolerance of EDGE_EPS; points
within EDGE_EPS of any edge count as inside (robots sliding along the fence
are not penalized). Polygons are normalized to counter-clockwise vertex order
on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegenerateAreaError,
    SelfIntersectingError,
    TooFewVerticesError,
)

# Distance from an edge below which a point is treated as on the boundary.
EDGE_EPS = 1e-9


@dataclass(frozen=True)
class Point2:
    """A point in the plane, in field units. Coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates: ({self.x}, {self.y})")


def euclidean_distance(p: Point2, q: Point2) -> float:
    """Distance between two points; symmetric, zero iff p == q."""
    return math.hypot(p.x - q.x, p.y - q.y)


def _signed_area(vertices: Sequence[Point2]) -> float:
    """Shoelace signed area; positive for counter-clockwise order."""
    total = 0.0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return 0.5 * total


def _orientation(a: Point2, b: Point2, c: Point2) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _on_segment(a: Point2, b: Point2, p: Point2) -> bool:
    """True if collinear p lies within the bounding box of segment ab."""
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def _segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool:
    """Segment intersection test, including touching and collinear overlap."""
    d1 = _orientation(q1, q2, p1)
    d2 = _orientation(q1, q2, p2)
    d3 = _orientation(p1, p2, q1)
    d4 = _orientation(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def _point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    ax, ay = b.x - a.x, b.y - a.y
    px, py = p.x - a.x, p.y - a.y
    seg_len_sq = ax * ax + ay * ay
    if seg_len_sq == 0.0:
        return math.hypot(px, py)
    t = (px * ax + py * ay) / seg_len_sq
    t = min(1.0, max(0.0, t))
    return math.hypot(px - t * ax, py - t * ay)


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with vertices stored counter-clockwise.

    Construct via validate_polygon(); direct construction skips validation and
    is reserved for already-normalized vertex tuples.
    """

    vertices: tuple[Point2, ...]

    @property
    def area(self) -> float:
        return abs(_signed_area(self.vertices))

    def edges(self) -> Iterable[tuple[Point2, Point2]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def bounding_box(self) -> tuple[Point2, Point2]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return Point2(min(xs), min(ys)), Point2(max(xs), max(ys))


def validate_polygon(vertices: Sequence[Point2 | tuple[float, float]]) -> Polygon:
    """Validate and normalize a vertex list into a CCW simple polygon.

    Raises TooFewVerticesError, SelfIntersectingError (repeated vertices or
    crossing/touching edges), or DegenerateAreaError (area indistinguishable
    from zero at the polygon's scale). Idempotent on already-valid polygons.
    """
    pts = tuple(v if isinstance(v, Point2) else Point2(*v) for v in vertices)
    if len(pts) < 3:
        raise TooFewVerticesError(f"polygon needs >= 3 vertices, got {len(pts)}")
    if len({(v.x, v.y) for v in pts}) != len(pts):
        raise SelfIntersectingError("repeated vertex")

    # Crossing edges first: a bow-tie has zero shoelace area, and reporting
    # it as degenerate would misname the violation.
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                raise SelfIntersectingError(f"edges {i} and {j} intersect")

    scale = max(max(abs(v.x), abs(v.y)) for v in pts)
    area = _signed_area(pts)
    if abs(area) <= 1e-12 * max(1.0, scale * scale):
        raise DegenerateAreaError("polygon area is zero")

    # Adjacent edges share a vertex by construction; folding back onto the
    # neighbor beyond that vertex is still a self-contact.
    for i in range(n):
        j = (i + 1) % n
        shared, far_a, far_b = _split_adjacent(*edges[i], *edges[j])
        if _orientation(shared, far_a, far_b) == 0 and (
            _on_segment(shared, far_a, far_b) or _on_segment(shared, far_b, far_a)
        ):
            raise SelfIntersectingError(f"edges {i} and {j} fold back on each other")

    if area < 0:
        pts = tuple(reversed(pts))
    return Polygon(pts)


def _split_adjacent(
    a1: Point2, a2: Point2, b1: Point2, b2: Point2
) -> tuple[Point2, Point2, Point2]:
    """For two edges sharing one endpoint, return (shared, far_a, far_b)."""
    if a2 == b1:
        return a2, a1, b2
    if a1 == b2:
        return a1, a2, b1
    if a1 == b1:
        return a1, a2, b2
    return a2, a1, b1


def contains(poly: Polygon, p: Point2) -> bool:
    """True iff p is inside poly; boundary points (within EDGE_EPS) count."""
    for a, b in poly.edges():
        if _point_segment_distance(p, a, b) <= EDGE_EPS:
            return True
    inside = False
    for a, b in poly.edges():
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < x_cross:
                inside = not inside
    return inside


def distance_to_boundary(poly: Polygon, p: Point2) -> float:
    """Smallest distance from p to any polygon edge."""
    return min(_point_segment_distance(p, a, b) for a, b in poly.edges())
