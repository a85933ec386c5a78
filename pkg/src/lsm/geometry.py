"""Polylines in 3D and the geometric primitives the metric is built on.

All distances are full 3D Euclidean; z is carried through every operation.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from lsm.errors import GeometryError

# Relative slack used when deciding whether a remainder segment exists.
_EPS = 1e-9


class Point3(NamedTuple):
    x: float
    y: float
    z: float = 0.0


class Projection(NamedTuple):
    foot: np.ndarray
    distance: float
    s: float


class Polyline3:
    """Immutable ordered sequence of 3D points with cached cumulative arc length."""

    __slots__ = ("_points", "_cum")

    def __init__(self, points: Sequence[Sequence[float]] | np.ndarray):
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] not in (2, 3):
            raise GeometryError(f"expected an (N, 3) point array, got shape {pts.shape}")
        if pts.shape[1] == 2:
            pts = np.column_stack([pts, np.zeros(len(pts))])
        if len(pts) < 2:
            raise GeometryError("a polyline needs at least 2 points")
        bad = np.flatnonzero(~np.isfinite(pts).all(axis=1))
        if bad.size:
            raise GeometryError(f"non-finite coordinate at point index {int(bad[0])}")
        seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        dup = np.flatnonzero(seg == 0.0)
        if dup.size:
            raise GeometryError(
                f"consecutive duplicate points at indices {int(dup[0])} and {int(dup[0]) + 1}"
            )
        pts.setflags(write=False)
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        cum.setflags(write=False)
        self._points = pts
        self._cum = cum

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def cumulative_arc_length(self) -> np.ndarray:
        return self._cum

    @property
    def length(self) -> float:
        return float(self._cum[-1])

    def __len__(self) -> int:
        return len(self._points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polyline3):
            return NotImplemented
        return self._points.shape == other._points.shape and bool(
            np.array_equal(self._points, other._points)
        )

    def __hash__(self) -> int:
        return hash(self._points.tobytes())

    def __repr__(self) -> str:
        return f"Polyline3(n={len(self)}, length={self.length:.3f})"

    def tolist(self) -> list[list[float]]:
        return self._points.tolist()

    def interpolate(self, s: np.ndarray | float) -> np.ndarray:
        """Points at arc-length positions ``s`` (clamped to the polyline)."""
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.length)
        return np.column_stack([np.interp(s, self._cum, self._points[:, k]) for k in range(3)])

    def tangents(self, s: np.ndarray | float) -> np.ndarray:
        """Unit direction of the segment containing each arc-length position."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        idx = np.searchsorted(self._cum, s, side="right") - 1
        idx = np.clip(idx, 0, len(self._points) - 2)
        d = self._points[idx + 1] - self._points[idx]
        return d / np.linalg.norm(d, axis=1, keepdims=True)

    def slice(self, s_start: float, s_end: float) -> Polyline3:
        """Sub-polyline between two arc-length positions."""
        s_start = max(0.0, s_start)
        s_end = min(self.length, s_end)
        if s_end <= s_start:
            raise GeometryError("empty slice")
        inner = (self._cum > s_start) & (self._cum < s_end)
        s = np.concatenate([[s_start], self._cum[inner], [s_end]])
        pts = self.interpolate(s)
        keep = np.concatenate([[True], np.linalg.norm(np.diff(pts, axis=0), axis=1) > 0.0])
        return Polyline3(pts[keep])


def arc_length(p: Polyline3) -> float:
    return p.length


def resample_positions(total: float, spacing: float) -> np.ndarray:
    """Arc-length stations 0, spacing, 2*spacing, ... closed by ``total``."""
    if spacing <= 0:
        raise GeometryError("spacing must be positive")
    n = math.floor(total / spacing + _EPS)
    s = spacing * np.arange(n + 1, dtype=float)
    if total - s[-1] > _EPS * max(1.0, total):
        s = np.append(s, total)
    else:
        s[-1] = total
    if len(s) < 2:
        s = np.array([0.0, total])
    return s


def resample(p: Polyline3, spacing: float) -> Polyline3:
    """Resample at equal arc-length ``spacing``; the last point is always p's endpoint.

    A spacing at or above the total length leaves only the two endpoints.
    """
    return Polyline3(p.interpolate(resample_positions(p.length, spacing)))


def closest_points(p: Polyline3, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised closest-point query: returns (feet, distances, s) for each row of ``queries``.

    Exact, but only segments that can beat the nearest vertex are projected:
    a segment's distance is at least its midpoint distance minus half its
    length, so midpoints farther than ``nearest_vertex + max_half_length``
    are skipped.
    """
    q = np.atleast_2d(np.asarray(queries, dtype=float))
    if q.shape[1] == 2:
        q = np.column_stack([q, np.zeros(len(q))])
    pts = p.points
    a = pts[:-1]
    d = pts[1:] - a
    dd = (d * d).sum(axis=1)
    seg_len = np.sqrt(dd)
    if len(q) == 0:
        return np.empty((0, 3)), np.empty(0), np.empty(0)

    upper, _ = cKDTree(pts).query(q)
    radius = (upper + 0.5 * seg_len.max()) * (1.0 + 1e-9) + 1e-12
    candidates = cKDTree(a + 0.5 * d).query_ball_point(q, radius)
    counts = np.fromiter((len(c) for c in candidates), dtype=np.intp, count=len(q))
    qi = np.repeat(np.arange(len(q)), counts)
    si = np.fromiter((k for c in candidates for k in c), dtype=np.intp, count=int(counts.sum()))

    rel = q[qi] - a[si]
    t = np.clip((rel * d[si]).sum(axis=1) / dd[si], 0.0, 1.0)
    foot = a[si] + t[:, None] * d[si]
    gap = q[qi] - foot
    d2 = (gap * gap).sum(axis=1)
    # per query: smallest distance, then smallest segment index (smallest arc length on ties)
    order = np.lexsort((si, d2, qi))
    first = order[np.flatnonzero(np.r_[True, np.diff(qi[order]) != 0])]
    s = p.cumulative_arc_length[si[first]] + t[first] * seg_len[si[first]]
    return foot[first], np.sqrt(d2[first]), s


def closest_point(p: Polyline3, q: Sequence[float]) -> Projection:
    feet, dist, s = closest_points(p, np.asarray(q, dtype=float)[None, :])
    return Projection(feet[0], float(dist[0]), float(s[0]))


def centerline(left: Polyline3, right: Polyline3, spacing: float) -> Polyline3:
    """Midpoints of the two boundaries paired at equal normalised arc length.

    Both boundaries get ``floor(min_length / spacing) + 1`` samples, so the
    pairing tolerates boundaries of different lengths.
    """
    if spacing <= 0:
        raise GeometryError("spacing must be positive")
    shortest = min(left.length, right.length)
    if shortest < spacing:
        raise GeometryError("boundary too short")
    n = max(2, math.floor(shortest / spacing + _EPS) + 1)
    frac = np.linspace(0.0, 1.0, n)
    mid = 0.5 * (left.interpolate(frac * left.length) + right.interpolate(frac * right.length))
    keep = np.concatenate([[True], np.linalg.norm(np.diff(mid, axis=0), axis=1) > 0.0])
    if keep.sum() < 2:
        raise GeometryError("degenerate centerline")
    return Polyline3(mid[keep])
