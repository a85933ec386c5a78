import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lsm.errors import GeometryError
from lsm.geometry import Polyline3, arc_length, centerline, closest_point, closest_points, resample

from conftest import arc, coord, polylines, straight


def dense_samples(p, step=1e-3):
    """Points every ``step`` metres along each segment, vertices included."""
    chunks = []
    for a, b in zip(p.points[:-1], p.points[1:]):
        n = max(2, int(math.ceil(np.linalg.norm(b - a) / step)) + 1)
        t = np.linspace(0.0, 1.0, n)[:, None]
        chunks.append(a + t * (b - a))
    return np.vstack(chunks)


class TestConstruction:
    def test_rejects_duplicates(self):
        with pytest.raises(GeometryError, match="duplicate"):
            Polyline3([[0, 0, 0], [1, 0, 0], [1, 0, 0]])

    def test_rejects_nan_with_index(self):
        with pytest.raises(GeometryError, match="index 1"):
            Polyline3([[0, 0, 0], [math.nan, 0, 0]])

    def test_rejects_single_point(self):
        with pytest.raises(GeometryError):
            Polyline3([[0, 0, 0]])

    def test_2d_input_gets_zero_z(self):
        p = Polyline3([[0, 0], [3, 4]])
        assert p.points[:, 2].tolist() == [0.0, 0.0]
        assert p.length == 5.0

    def test_immutable(self):
        p = straight(0.0)
        with pytest.raises(ValueError):
            p.points[0, 0] = 1.0


class TestArcLength:
    def test_straight(self):
        assert arc_length(straight(0.0)) == 10.0

    def test_square_wave(self):
        p = Polyline3([[0, 0, 0], [1, 0, 0], [1, 1, 0], [2, 1, 0], [2, 0, 0]])
        assert arc_length(p) == 4.0

    def test_quarter_circle_chord_sum(self):
        # chord of angle dtheta on radius r is 2 r sin(dtheta / 2)
        dtheta = (math.pi / 2) / 99
        expected = 99 * 2 * 10 * math.sin(dtheta / 2)
        assert arc_length(arc(10.0)) == pytest.approx(expected, abs=1e-9)
        assert arc_length(arc(10.0)) == pytest.approx(5 * math.pi, abs=0.01)

    def test_3d(self):
        assert arc_length(Polyline3([[0, 0, 0], [0, 0, 2]])) == 2.0


class TestResample:
    def test_count_at_tenth(self):
        assert len(resample(straight(0.0), 0.1)) == 101

    def test_remainder_endpoint(self):
        r = resample(straight(0.0), 3.0)
        assert r.points[:, 0].tolist() == pytest.approx([0, 3, 6, 9, 10])

    def test_spacing_at_least_length_keeps_endpoints(self):
        for spacing in (10.0, 25.0):
            r = resample(straight(0.0), spacing)
            assert r.points[:, 0].tolist() == [0.0, 10.0]

    def test_quarter_circle_length_preserved(self):
        p = arc(10.0)
        assert arc_length(resample(p, 0.1)) == pytest.approx(arc_length(p), rel=1e-3)

    @given(polylines(), st.floats(0.05, 5.0))
    def test_points_lie_on_original(self, p, spacing):
        r = resample(p, spacing)
        _, d, _ = closest_points(p, r.points)
        assert d.max() < 1e-7
        assert np.allclose(r.points[0], p.points[0])
        assert np.allclose(r.points[-1], p.points[-1])
        # chords can only shorten the path
        assert arc_length(r) <= arc_length(p) + 1e-9

    @given(st.floats(2.0, 200.0), st.floats(0.1, 3.0), st.floats(0.01, 1.0))
    def test_length_within_spacing_on_smooth_curves(self, radius, sweep, spacing):
        p = arc(radius, 400, stop=sweep)
        assert abs(arc_length(resample(p, spacing)) - arc_length(p)) < spacing

    @given(st.floats(0, 2 * math.pi), st.floats(0.5, 100.0), st.floats(0.05, 5.0))
    def test_uniform_stations_on_straight_line(self, heading, length, spacing):
        end = [length * math.cos(heading), length * math.sin(heading), 0.0]
        r = resample(Polyline3([[0, 0, 0], end]), spacing)
        steps = np.linalg.norm(np.diff(r.points, axis=0), axis=1)
        assert np.allclose(steps[:-1], spacing)
        assert 0 < steps[-1] <= spacing + 1e-9


class TestClosestPoint:
    def test_perpendicular(self):
        foot, d, s = closest_point(straight(0.0), (5, 2, 0))
        assert foot.tolist() == [5.0, 0.0, 0.0]
        assert d == 2.0
        assert s == 5.0

    def test_endpoint_clamp(self):
        foot, d, s = closest_point(straight(0.0), (12, 1, 0))
        assert foot.tolist() == [10.0, 0.0, 0.0]
        assert d == pytest.approx(math.sqrt(5))
        assert s == 10.0

    def test_tie_takes_smallest_s(self):
        # U-turn: the query is equidistant from both legs
        p = Polyline3([[0, 1, 0], [10, 1, 0], [10, -1, 0], [0, -1, 0]])
        _, d, s = closest_point(p, (5, 0, 0))
        assert d == 1.0
        assert s == 5.0

    def test_matches_dense_sampling_oracle(self):
        rng = np.random.default_rng(3)
        p = Polyline3(np.cumsum(rng.uniform(-1, 3, size=(15, 3)) * [1, 1, 0.1], axis=0))
        dense = dense_samples(p)
        queries = rng.uniform(dense.min(0) - 2, dense.max(0) + 2, size=(1000, 3))
        _, d, _ = closest_points(p, queries)
        oracle = np.sqrt(((queries[:, None, :] - dense[None, :, :]) ** 2).sum(-1)).min(axis=1)
        assert np.all(d <= oracle + 1e-12)
        assert np.max(oracle - d) < 1e-3

    @given(polylines(), st.tuples(coord, coord, coord))
    def test_not_farther_than_any_vertex(self, p, q):
        _, d, s = closest_point(p, q)
        vertex_d = np.linalg.norm(p.points - np.asarray(q), axis=1)
        assert d <= vertex_d.min() + 1e-9
        assert 0.0 <= s <= p.length + 1e-9

    @given(polylines(), st.tuples(coord, coord, coord))
    def test_foot_consistent_with_s(self, p, q):
        foot, d, s = closest_point(p, q)
        assert np.allclose(p.interpolate(s), foot, atol=1e-7)
        assert d == pytest.approx(np.linalg.norm(np.asarray(q) - foot), abs=1e-9)


    @given(polylines(max_points=30), st.lists(st.tuples(coord, coord, coord), min_size=1, max_size=20))
    def test_pruned_search_matches_every_segment(self, p, qs):
        _, d, s = closest_points(p, np.array(qs))
        for q, dist, station in zip(qs, d, s):
            q = np.asarray(q)
            every = []
            for a, b in zip(p.points[:-1], p.points[1:]):
                t = min(1.0, max(0.0, np.dot(q - a, b - a) / np.dot(b - a, b - a)))
                every.append(np.linalg.norm(q - (a + t * (b - a))))
            assert dist == pytest.approx(min(every), abs=1e-9)
            assert np.linalg.norm(q - p.interpolate(station)[0]) == pytest.approx(dist, abs=1e-7)


class TestCenterline:
    def test_parallel_symmetric(self):
        c = centerline(straight(0.0, 0, 30), straight(3.0, 0, 30), 0.1)
        assert np.allclose(c.points[:, 1], 1.5)
        assert c.points[0, 0] == 0.0 and c.points[-1, 0] == 30.0
        assert len(c) == 301

    def test_unequal_lengths(self):
        left, right = straight(1.75, 0, 30), straight(-1.75, 0, 60)
        c = centerline(left, right, 0.1)
        assert len(c) == 301
        assert np.allclose(c.points[:, 1], 0.0)
        assert c.length <= 0.5 * (left.length + right.length)

    def test_concentric_arcs(self):
        c = centerline(arc(9.0, 200), arc(12.0, 200), 0.1)
        radii = np.hypot(c.points[:, 0], c.points[:, 1])
        assert np.max(np.abs(radii - 10.5)) < 0.02

    def test_too_short(self):
        with pytest.raises(GeometryError, match="boundary too short"):
            centerline(straight(0.0, 0, 0.05), straight(3.0, 0, 10), 0.1)

    @given(polylines(), polylines())
    def test_symmetric(self, a, b):
        if min(a.length, b.length) < 0.5:
            return
        try:
            c1 = centerline(a, b, 0.5)
            c2 = centerline(b, a, 0.5)
        except GeometryError:
            return
        assert np.allclose(c1.points, c2.points)

    @settings(max_examples=50)
    @given(st.floats(0.5, 5.0), st.floats(-30, 30), st.floats(0, 2 * math.pi), st.floats(1.0, 80.0))
    def test_equidistant_for_parallel_offsets(self, width, y0, heading, length):
        d = np.array([math.cos(heading), math.sin(heading), 0.0])
        n = np.array([-d[1], d[0], 0.0])
        base = np.array([0.0, y0, 0.0])
        left = Polyline3([base + n * width / 2, base + n * width / 2 + d * length])
        right = Polyline3([base - n * width / 2, base - n * width / 2 + d * length])
        c = centerline(left, right, 0.1)
        _, dl, _ = closest_points(left, c.points)
        _, dr, _ = closest_points(right, c.points)
        assert np.max(np.abs(dl - dr)) < 1e-6
