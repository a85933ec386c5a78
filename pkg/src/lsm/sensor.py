"""Generic lane sensor: derives detected boundaries from ground truth.

Randomness comes from numpy's counter-based Philox bit generator seeded with
``SeedSequence(seed)``.  Each ``sense`` call draws, in order: three uniforms
(frame dropout, left dropout, right dropout), then one standard normal per
left sample, then one per right sample (only for boundaries that survive
dropout).  Frame ``i`` of a sequence uses seed ``seed + i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from lsm.errors import GeometryError, InputError
from lsm.geometry import Point3, Polyline3, closest_point, resample_positions
from lsm.types import DetectionFrame, EgoState, Lane, Side

RNG_ALGORITHM = "numpy.random.Philox(SeedSequence(seed))"


@dataclass(frozen=True)
class OffsetSegment:
    """Extra lateral offset on one boundary for ``s_start <= s < s_end``.

    ``s`` is arc length along the boundary measured from the ego's projection.
    """

    side: Side
    s_start: float
    s_end: float
    offset: float


@dataclass(frozen=True)
class SensorModel:
    """Error model parameters.  Offsets are signed, positive toward the lane interior."""

    range_left: float = math.inf
    range_right: float = math.inf
    lateral_noise_sigma: float = 0.0
    offset_left: float = 0.0
    offset_right: float = 0.0
    offset_schedule: tuple[OffsetSegment, ...] = ()
    dropout_frame_prob: float = 0.0
    dropout_boundary_prob: float = 0.0
    seed: int = 0
    sample_spacing: float = 0.10

    def __post_init__(self):
        if not (self.range_left > 0 and self.range_right > 0):
            raise InputError("sensor ranges must be > 0")
        if not self.lateral_noise_sigma >= 0:
            raise InputError("noise sigma must be >= 0")
        for name in ("dropout_frame_prob", "dropout_boundary_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise InputError(f"{name} must be in [0, 1]")
        if not self.sample_spacing > 0:
            raise InputError("sample spacing must be > 0")
        for seg in self.offset_schedule:
            if not seg.s_end > seg.s_start:
                raise InputError("offset segment needs s_end > s_start")

    def range_for(self, side: Side) -> float:
        return self.range_left if side is Side.LEFT else self.range_right

    def offset_for(self, side: Side) -> float:
        return self.offset_left if side is Side.LEFT else self.offset_right


@dataclass(frozen=True)
class Trajectory:
    origins: tuple[Point3, ...]
    ego: EgoState
    dt: float = 0.1
    start_time: float = 0.0

    def __post_init__(self):
        if not self.origins:
            raise InputError("trajectory must contain at least one position")
        if not self.dt >= 0:
            raise InputError("trajectory dt must be >= 0")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _interior_normals(boundary: Polyline3, s: np.ndarray, side: Side) -> np.ndarray:
    t = boundary.tangents(s)
    planar = np.hypot(t[:, 0], t[:, 1])
    if np.any(planar == 0.0):
        raise GeometryError("boundary segment is vertical; no in-plane normal")
    left_normal = np.column_stack([-t[:, 1] / planar, t[:, 0] / planar, np.zeros(len(t))])
    return -left_normal if side is Side.LEFT else left_normal


def _sense_boundary(
    boundary: Polyline3,
    side: Side,
    ego_origin: Point3,
    model: SensorModel,
    rng: np.random.Generator,
) -> Polyline3 | None:
    s0 = closest_point(boundary, ego_origin).s
    length = min(model.range_for(side), boundary.length - s0)
    if length <= 0.0:
        return None
    s_rel = resample_positions(length, model.sample_spacing)
    s_abs = s0 + s_rel
    lateral = np.full(len(s_rel), model.offset_for(side))
    for seg in model.offset_schedule:
        if seg.side is side:
            lateral[(s_rel >= seg.s_start) & (s_rel < seg.s_end)] += seg.offset
    if model.lateral_noise_sigma > 0:
        lateral = lateral + model.lateral_noise_sigma * rng.standard_normal(len(s_rel))
    pts = boundary.interpolate(s_abs) + lateral[:, None] * _interior_normals(boundary, s_abs, side)
    return Polyline3(pts)


def sense(
    gt_lane: Lane, ego_origin: Point3, model: SensorModel
) -> tuple[Polyline3 | None, Polyline3 | None]:
    """Detected (left, right) boundaries; ``None`` marks a dropped boundary."""
    rng = make_rng(model.seed)
    u_frame, u_left, u_right = rng.random(3)
    if u_frame < model.dropout_frame_prob:
        return None, None
    left = right = None
    if not u_left < model.dropout_boundary_prob:
        left = _sense_boundary(gt_lane.left_boundary, Side.LEFT, ego_origin, model, rng)
    if not u_right < model.dropout_boundary_prob:
        right = _sense_boundary(gt_lane.right_boundary, Side.RIGHT, ego_origin, model, rng)
    return left, right


def sense_sequence(
    gt_lane: Lane, trajectory: Trajectory | Sequence[Point3], model: SensorModel, ego: EgoState | None = None
) -> list[DetectionFrame]:
    if not isinstance(trajectory, Trajectory):
        if ego is None:
            raise InputError("an EgoState is required with a bare list of origins")
        trajectory = Trajectory(tuple(trajectory), ego)
    frames = []
    for i, origin in enumerate(trajectory.origins):
        left, right = sense(gt_lane, origin, replace(model, seed=model.seed + i))
        frames.append(
            DetectionFrame(
                frame_index=i,
                timestamp=trajectory.start_time + i * trajectory.dt,
                ego=trajectory.ego,
                ego_origin=Point3(*origin),
                left=left,
                right=right,
            )
        )
    return frames
