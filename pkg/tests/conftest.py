import math

import numpy as np
import pytest
from hypothesis import strategies as st

from lsm.geometry import Point3, Polyline3
from lsm.types import (
    AdjacentKind,
    AdjacentLaneInfo,
    DetectionFrame,
    EgoState,
    EvalConfig,
    Lane,
    LaneContext,
    RoadType,
)


def straight(y, x0=0.0, x1=10.0, z=0.0):
    return Polyline3([[x0, y, z], [x1, y, z]])


def arc(radius, n=100, start=0.0, stop=math.pi / 2):
    t = np.linspace(start, stop, n)
    return Polyline3(np.column_stack([radius * np.cos(t), radius * np.sin(t), np.zeros(n)]))


def make_lane(width=3.5, x0=-10.0, x1=150.0, left_adj=None, right_adj=None, road=RoadType.RURAL):
    ctx = LaneContext(
        lane_width=width,
        left_adjacent=left_adj or AdjacentLaneInfo(AdjacentKind.OPPOSITE_DIRECTION, 27.78, 180.0),
        right_adjacent=right_adj or AdjacentLaneInfo(AdjacentKind.VRUS, 0.0, 0.0),
        road_type=road,
    )
    return Lane("ego", straight(width / 2, x0, x1), straight(-width / 2, x0, x1), ctx)


def make_frame(left, right, v0=13.89, vehicle_width=2.0, origin=(0.0, 0.0, 0.0), index=0):
    return DetectionFrame(index, 0.1 * index, EgoState(v0, vehicle_width), Point3(*origin), left, right)


@pytest.fixture
def lane():
    return make_lane()


@pytest.fixture
def cfg():
    return EvalConfig()


coord = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def polylines(draw, min_points=2, max_points=12):
    """Random 3D polylines built from (heading, step length, climb) increments."""
    n = draw(st.integers(min_points, max_points))
    start = draw(st.tuples(coord, coord, st.floats(-2, 2)))
    steps = draw(
        st.lists(
            st.tuples(st.floats(0, 2 * math.pi), st.floats(0.01, 10.0), st.floats(-0.5, 0.5)),
            min_size=n - 1,
            max_size=n - 1,
        )
    )
    pts = [np.array(start, dtype=float)]
    for heading, length, dz in steps:
        pts.append(pts[-1] + [length * math.cos(heading), length * math.sin(heading), dz])
    return Polyline3(pts)


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for key in ("passed", "failed")
        for report in terminalreporter.stats.get(key, [])
        if report.when == "call"
        for name, value in report.user_properties
        if name == "acceptance"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
