"""Independent brute-force oracles used to cross-check the library.

Everything here is deliberately written against the definitions, not the
library code paths it checks: winding numbers instead of ray casting,
scalar arithmetic instead of the env transition, two-pass statistics instead
of Welford, sorted()-based selection instead of argsort.
"""

from __future__ import annotations

import math

import numpy as np


def winding_contains(vertices, x: float, y: float) -> bool:
    """Winding-number point-in-polygon (nonzero rule)."""

    def is_left(ax, ay, bx, by):
        return (bx - ax) * (y - ay) - (x - ax) * (by - ay)

    wn = 0
    n = len(vertices)
    for i in range(n):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % n]
        if ay <= y:
            if by > y and is_left(ax, ay, bx, by) > 0:
                wn += 1
        else:
            if by <= y and is_left(ax, ay, bx, by) < 0:
                wn -= 1
    return wn != 0


def point_edge_distance(vertices, x: float, y: float) -> float:
    """Distance from (x, y) to the closest polygon edge."""
    best = math.inf
    n = len(vertices)
    for i in range(n):
        ax, ay = vertices[i]
        bx, by = vertices[(i + 1) % n]
        ux, uy = bx - ax, by - ay
        px, py = x - ax, y - ay
        denom = ux * ux + uy * uy
        t = 0.0 if denom == 0.0 else min(1.0, max(0.0, (px * ux + py * uy) / denom))
        best = min(best, math.hypot(px - t * ux, py - t * uy))
    return best


def random_simple_polygon(rng: np.random.Generator, k: int, scale: float):
    """Random star-shaped polygon: k uniform points ordered by angle."""
    pts = rng.uniform(0.0, scale, size=(k, 2))
    cx, cy = pts[:, 0].mean(), pts[:, 1].mean()
    order = sorted(range(k), key=lambda i: math.atan2(pts[i, 1] - cy, pts[i, 0] - cx))
    return [(float(pts[i, 0]), float(pts[i, 1])) for i in order]


def scalar_dynamics(
    positions,
    velocities,
    forces,
    mass: float,
    tau: float,
    v_clip: float,
    wind_speed: float,
    wind_angle: float,
):
    """Hand-rolled transition: velocity update, clamp, position update."""
    wx = wind_speed * math.cos(wind_angle)
    wy = wind_speed * math.sin(wind_angle)
    new_positions = []
    new_velocities = []
    for (x, y), (vx, vy), (fx, fy) in zip(positions, velocities, forces):
        nvx = vx + fx / mass + wx
        nvy = vy + fy / mass + wy
        if nvx > v_clip:
            nvx = v_clip
        elif nvx < -v_clip:
            nvx = -v_clip
        if nvy > v_clip:
            nvy = v_clip
        elif nvy < -v_clip:
            nvy = -v_clip
        new_positions.append((x + nvx * tau, y + nvy * tau))
        new_velocities.append((nvx, nvy))
    return new_positions, new_velocities


def batch_mean_var(samples):
    """Two-pass population mean/variance, one vector per sample."""
    arr = np.asarray(samples, dtype=np.float64)
    mean = arr.sum(axis=0) / len(arr)
    var = ((arr - mean) ** 2).sum(axis=0) / len(arr)
    return mean, var


def brute_force_ars_update(deltas, r_plus, r_minus, alpha, top_b):
    """Reference top-b aggregation using sorted() and explicit loops."""
    n = len(r_plus)
    scored = sorted(range(n), key=lambda k: (-max(r_plus[k], r_minus[k]), k))
    chosen = scored[:top_b]
    retained = [r_plus[k] for k in chosen] + [r_minus[k] for k in chosen]
    mean = sum(retained) / len(retained)
    sigma = math.sqrt(sum((r - mean) ** 2 for r in retained) / len(retained))
    if sigma == 0.0:
        return None, 0.0
    total = np.zeros_like(np.asarray(deltas[0], dtype=np.float64))
    for k in chosen:
        total = total + (r_plus[k] - r_minus[k]) * np.asarray(deltas[k])
    return (alpha / (top_b * sigma)) * total, sigma


def pairwise_min_distance(points) -> float:
    best = math.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            best = min(
                best,
                math.hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]),
            )
    return best
