"""Lane Safety Metric: longitudinal, lateral and scenario scores and their composition."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from lsm.errors import InputError, LsmError
from lsm.geometry import Polyline3, centerline, closest_points, resample
from lsm.types import (
    AdjacentKind,
    AdjacentLaneInfo,
    Classification,
    DetectionFrame,
    EgoState,
    EvalConfig,
    Lane,
    LaneContext,
    Side,
    UserClass,
)

log = logging.getLogger(__name__)

# s_lat value that marks an imminent lane departure and routes S through s_scen
LATERAL_SENTINEL = 0.8
# Impact-velocity band edges (m/s) and the score at each edge, highest score first.
# Scores interpolate linearly between edges; anything above the last edge scores 0.
SEVERITY_EDGES = {
    UserClass.VEHICLE: (0.0, 8.3, 13.9, 16.7),
    UserClass.VRU: (0.0, 3.0, 8.3, 11.1),
}
SEVERITY_SCORES = (0.8, 0.6, 0.4, 0.2)
# Upper-inclusive limits of each classification band.
CLASS_BANDS = (
    (0.2, Classification.INSUFFICIENT),
    (0.4, Classification.VERY_BAD),
    (0.6, Classification.BAD),
    (0.8, Classification.GOOD),
    (1.0, Classification.VERY_GOOD),
)
_RUN_EPS = 1e-9


class ViolationRun(NamedTuple):
    s_start: float
    s_end: float
    side: Side


@dataclass(frozen=True, eq=False)
class DeviationProfile:
    """Lateral deviation of the detected centerline, sampled along its arc length.

    ``left[i]`` is True when sample i lies closer to the left GT boundary.
    """

    s: np.ndarray
    d_lat: np.ndarray
    left: np.ndarray
    spacing: float

    def __post_init__(self):
        if not (len(self.s) == len(self.d_lat) == len(self.left)):
            raise InputError("profile arrays differ in length")
        if len(self.s) > 1 and not np.all(np.diff(self.s) > 0):
            raise InputError("profile arc lengths must be strictly increasing")
        if np.any(self.d_lat < 0):
            raise InputError("d_lat must be >= 0")

    def __len__(self) -> int:
        return len(self.s)

    @property
    def samples(self) -> list[tuple[float, float, Side]]:
        return [
            (float(s), float(d), Side.LEFT if lf else Side.RIGHT)
            for s, d, lf in zip(self.s, self.d_lat, self.left)
        ]

    @classmethod
    def uniform(cls, d_lat, left=True, spacing: float = 0.1) -> DeviationProfile:
        """Profile with samples at 0, spacing, 2*spacing, ..."""
        d_lat = np.asarray(d_lat, dtype=float)
        left_arr = np.broadcast_to(np.asarray(left, dtype=bool), d_lat.shape).copy()
        return cls(spacing * np.arange(len(d_lat)), d_lat, left_arr, spacing)


@dataclass(frozen=True)
class SafetyResult:
    s_long: float
    s_lat: float
    s_scen: float | None
    S: float
    d_long: float
    d_det: float
    v_r: float
    violation_runs: list[ViolationRun]
    classification: Classification
    error: str | None = None
    profile: DeviationProfile | None = field(default=None, compare=False, repr=False)


# -- longitudinal ---------------------------------------------------------------


def required_range(ego: EgoState, cfg: EvalConfig) -> float:
    """Braking distance including processing delay, scaled by the safety margin."""
    v0 = ego.v0
    return cfg.safety_margin_long * (v0 * cfg.t_delay + v0 * v0 / (2.0 * cfg.a))


def detection_range(left: Polyline3, right: Polyline3) -> float:
    return min(left.length, right.length)


def remaining_velocity(v0: float, a: float, d_det: float) -> float:
    # braking over d_det without the delay term; clamped where the car stops in time
    return math.sqrt(max(0.0, v0 * v0 - 2.0 * a * d_det))


def severity_score(v_impact: float, user_class: UserClass = UserClass.VEHICLE) -> float:
    if not v_impact >= 0:
        raise InputError(f"impact velocity must be >= 0, got {v_impact}")
    edges = SEVERITY_EDGES[UserClass(user_class)]
    if v_impact > edges[-1]:
        return 0.0
    return float(np.interp(v_impact, edges, SEVERITY_SCORES))


def longitudinal_score(ego: EgoState, cfg: EvalConfig, d_det: float) -> tuple[float, float]:
    """Return (s_long, v_r)."""
    if d_det >= required_range(ego, cfg):
        return 1.0, 0.0
    v_r = remaining_velocity(ego.v0, cfg.a, d_det)
    if v_r == 0.0:
        # margin violated but the vehicle still stops before the end of the detection
        return LATERAL_SENTINEL, 0.0
    return severity_score(v_r, UserClass.VEHICLE), v_r


# -- lateral --------------------------------------------------------------------


def lateral_threshold(lane_width: float, vehicle_width: float, x_lat: float = 0.0) -> tuple[float, float]:
    """Tolerable centerline deviation toward / against the desired offset direction.

    With ``x_lat`` positive toward the left, the first value applies to
    deviations to the left and the second to deviations to the right.
    """
    if lane_width <= vehicle_width:
        raise InputError(
            f"vehicle wider than lane (vehicle {vehicle_width} m, lane {lane_width} m): "
            "no tolerable lateral deviation"
        )
    base = 0.5 * (lane_width - vehicle_width)
    toward, against = base - x_lat, base + x_lat
    if min(toward, against) <= 0:
        raise InputError(f"lateral offset {x_lat} m leaves no tolerance on one side")
    return toward, against


def deviation_profile(
    det_center: Polyline3,
    gt_center: Polyline3,
    gt_left: Polyline3,
    gt_right: Polyline3,
    spacing: float = 0.10,
) -> DeviationProfile:
    samples = resample(det_center, spacing)
    pts = samples.points
    _, d_lat, _ = closest_points(gt_center, pts)
    _, d_left, _ = closest_points(gt_left, pts)
    _, d_right, _ = closest_points(gt_right, pts)
    return DeviationProfile(samples.cumulative_arc_length.copy(), d_lat, d_left < d_right, spacing)


def _true_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive (first, last) index pairs of maximal True stretches."""
    padded = np.concatenate([[False], mask, [False]]).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(a), int(b) - 1) for a, b in zip(edges[::2], edges[1::2])]


def _side_limits(profile: DeviationProfile, threshold: float | Mapping[Side, float]) -> np.ndarray:
    if isinstance(threshold, Mapping):
        return np.where(profile.left, threshold[Side.LEFT], threshold[Side.RIGHT])
    return np.full(len(profile), float(threshold))


def violation_runs(
    profile: DeviationProfile, threshold: float | Mapping[Side, float], d_min: float
) -> list[ViolationRun]:
    """Maximal stretches with d_lat above threshold that persist for at least ``d_min``.

    Each sample covers ``spacing`` of arc length, so a run's extent is
    ``s_end - s_start + spacing``.  A run takes the side of its largest
    deviation relative to the threshold.
    """
    if len(profile) == 0:
        return []
    limits = _side_limits(profile, threshold)
    ratio = profile.d_lat / limits
    runs = []
    for i0, i1 in _true_runs(ratio > 1.0):
        s0, s1 = float(profile.s[i0]), float(profile.s[i1])
        if s1 - s0 + profile.spacing + _RUN_EPS >= d_min:
            worst = i0 + int(np.argmax(ratio[i0 : i1 + 1]))
            runs.append(ViolationRun(s0, s1, Side.LEFT if profile.left[worst] else Side.RIGHT))
    return runs


def _persistent_level(ratio: np.ndarray, window: int) -> float:
    """Largest level that some stretch of ``window`` consecutive samples stays at or above."""
    if len(ratio) == 0:
        return 0.0
    if len(ratio) < window:
        return float(ratio.min())
    return float(np.lib.stride_tricks.sliding_window_view(ratio, window).min(axis=1).max())


def lateral_score(
    profile: DeviationProfile,
    th: tuple[float, float],
    cfg: EvalConfig,
    v0: float,
) -> tuple[float, list[ViolationRun]]:
    """Return (s_lat, persistent violation runs).

    Deviations are normalised by the usable limit on their side.  Without a
    persistent violation the score falls linearly from 1.0 at zero deviation
    toward the sentinel at the limit, using the highest level held over at
    least ``d_min`` of arc length.  Isolated violating samples are dropped
    before that aggregation so a single outlier cannot move the score.
    """
    limits = {
        Side.LEFT: cfg.lat_usable_fraction * th[0],
        Side.RIGHT: cfg.lat_usable_fraction * th[1],
    }
    d_min = cfg.t_delay * v0
    runs = violation_runs(profile, limits, d_min)
    if runs:
        return LATERAL_SENTINEL, runs
    ratio = profile.d_lat / _side_limits(profile, limits)
    ratio = ratio[ratio <= 1.0]
    window = max(1, math.ceil(d_min / profile.spacing - _RUN_EPS))
    f = min(1.0, _persistent_level(ratio, window))
    s_lat = 1.0 - (1.0 - LATERAL_SENTINEL) * f
    # the linear map is open at the sentinel end
    return max(s_lat, math.nextafter(LATERAL_SENTINEL, 1.0)), []


# -- scenario semantics ---------------------------------------------------------


def impact_velocity(ego_v: float, adj: AdjacentLaneInfo) -> tuple[float, UserClass]:
    """Relative speed between ego and worst-case traffic on the adjacent lane."""
    user_class = UserClass.VRU if adj.kind is AdjacentKind.VRUS else UserClass.VEHICLE
    if adj.kind in (AdjacentKind.SAME_DIRECTION, AdjacentKind.OPPOSITE_DIRECTION):
        v_adj = adj.speed_limit
    else:
        v_adj = 0.0
    theta = math.radians(adj.angle_deg)
    v2 = ego_v * ego_v + v_adj * v_adj - 2.0 * ego_v * v_adj * math.cos(theta)
    return math.sqrt(max(0.0, v2)), user_class


def scenario_score(ego: EgoState, departed_side: Side, ctx: LaneContext) -> float:
    v_impact, user_class = impact_velocity(ego.v0, ctx.adjacent(departed_side))
    return severity_score(v_impact, user_class)


# -- composition ----------------------------------------------------------------


def final_score(s_long: float, s_lat: float, s_scen: float | None = None) -> float:
    if s_lat > LATERAL_SENTINEL:
        return min(s_long, s_lat)
    if s_scen is None:
        raise InputError("lateral sentinel reached but no scenario score given")
    return min(s_long, s_scen)


def classify(S: float) -> Classification:
    if not 0.0 <= S <= 1.0:
        raise InputError(f"safety score must be in [0, 1], got {S}")
    for upper, label in CLASS_BANDS:
        if S <= upper:
            return label
    return Classification.VERY_GOOD


def _no_detection(ego: EgoState, d_long: float, error: str | None = None) -> SafetyResult:
    return SafetyResult(
        s_long=0.0,
        s_lat=0.0,
        s_scen=None,
        S=0.0,
        d_long=d_long,
        d_det=0.0,
        v_r=ego.v0,
        violation_runs=[],
        classification=Classification.INSUFFICIENT,
        error=error,
    )


def evaluate_frame(
    frame: DetectionFrame,
    lane: Lane,
    cfg: EvalConfig,
    ctx: LaneContext | None = None,
) -> SafetyResult:
    """Score one detection frame against the ground-truth lane.

    A frame missing either boundary scores 0.  Geometry or input errors are
    caught, logged and reported through ``SafetyResult.error`` with S = 0.
    """
    ctx = ctx or lane.context
    ego = frame.ego
    d_long = required_range(ego, cfg)
    if frame.left is None or frame.right is None:
        return _no_detection(ego, d_long)
    try:
        th = lateral_threshold(ctx.lane_width, ego.vehicle_width, cfg.x_lat)
        det_center = centerline(frame.left, frame.right, cfg.sample_spacing)
        gt_center = centerline(lane.left_boundary, lane.right_boundary, cfg.sample_spacing)
    except LsmError as exc:
        log.warning("frame %d: %s", frame.frame_index, exc)
        return _no_detection(ego, d_long, error=str(exc))

    d_det = detection_range(frame.left, frame.right)
    s_long, v_r = longitudinal_score(ego, cfg, d_det)
    profile = deviation_profile(
        det_center, gt_center, lane.left_boundary, lane.right_boundary, cfg.sample_spacing
    )
    s_lat, runs = lateral_score(profile, th, cfg, ego.v0)
    s_scen = None
    if s_lat <= LATERAL_SENTINEL:
        s_scen = min(scenario_score(ego, side, ctx) for side in {r.side for r in runs})
    S = final_score(s_long, s_lat, s_scen)
    return SafetyResult(
        s_long=s_long,
        s_lat=s_lat,
        s_scen=s_scen,
        S=S,
        d_long=d_long,
        d_det=d_det,
        v_r=v_r,
        violation_runs=runs,
        classification=classify(S),
        profile=profile,
    )
