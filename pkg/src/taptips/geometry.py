"""Pixel-space polygons and the containment tests behind target hit detection.

Containment uses the even-odd fill rule, matching classic client-side imagemap
semantics. Points exactly on an edge count as inside, so a tap landing on an
outline is a hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = [
    "Point",
    "Polygon",
    "polygon",
    "point_in_polygon",
    "points_in_polygon",
    "bounding_box",
]


@dataclass(frozen=True)
class Point:
    """A position in wall pixel space. Sub-pixel coordinates are legal."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x!r}, {self.y!r})")

    def translated(self, dx: float, dy: float) -> Point:
        return Point(self.x + dx, self.y + dy)


@dataclass(frozen=True)
class Polygon:
    """A closed polygon. The edge from the last vertex back to the first is implicit."""

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {len(vertices)}")
        for a, b in _edges(vertices):
            if a == b:
                raise ValueError(f"degenerate polygon: repeated consecutive vertex ({a.x}, {a.y})")

    def translated(self, dx: float, dy: float) -> Polygon:
        return Polygon(tuple(v.translated(dx, dy) for v in self.vertices))


def polygon(*coords: tuple[float, float]) -> Polygon:
    """Shorthand: build a Polygon from (x, y) pairs."""
    return Polygon(tuple(Point(x, y) for x, y in coords))


def _edges(vertices: tuple[Point, ...]) -> Iterator[tuple[Point, Point]]:
    n = len(vertices)
    for i in range(n):
        yield vertices[i], vertices[(i + 1) % n]


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    if cross != 0.0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def point_in_polygon(p: Point, poly: Polygon) -> bool:
    """True iff ``p`` lies inside ``poly`` under the even-odd rule.

    Boundary-inclusive: points exactly on an edge (vertices included) are
    inside. Off the boundary this is the classic crossing count for a
    horizontal ray cast toward +x.
    """
    for a, b in _edges(poly.vertices):
        if _on_segment(p, a, b):
            return True
    inside = False
    for a, b in _edges(poly.vertices):
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < x_cross:
                inside = not inside
    return inside


def points_in_polygon(xs: np.ndarray, ys: np.ndarray, poly: Polygon) -> np.ndarray:
    """Vectorized :func:`point_in_polygon` over coordinate arrays.

    Returns a boolean array of the broadcast shape of ``xs`` and ``ys``.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
        raise ValueError("point coordinates must be finite")
    xs, ys = np.broadcast_arrays(xs, ys)

    inside = np.zeros(xs.shape, dtype=bool)
    boundary = np.zeros(xs.shape, dtype=bool)
    for a, b in _edges(poly.vertices):
        cross = (b.x - a.x) * (ys - a.y) - (b.y - a.y) * (xs - a.x)
        on_seg = (
            (cross == 0.0)
            & (xs >= min(a.x, b.x))
            & (xs <= max(a.x, b.x))
            & (ys >= min(a.y, b.y))
            & (ys <= max(a.y, b.y))
        )
        boundary |= on_seg
        crosses = (a.y > ys) != (b.y > ys)
        if np.any(crosses):
            with np.errstate(divide="ignore", invalid="ignore"):
                x_cross = a.x + (ys - a.y) * (b.x - a.x) / (b.y - a.y)
            inside ^= crosses & (xs < x_cross)
    return inside | boundary


def bounding_box(poly: Polygon) -> tuple[Point, Point]:
    """Tight axis-aligned box containing all vertices, as (min, max) corners."""
    xs = [v.x for v in poly.vertices]
    ys = [v.y for v in poly.vertices]
    return Point(min(xs), min(ys)), Point(max(xs), max(ys))
