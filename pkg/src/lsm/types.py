"""Domain records shared by the metric, the sensor model and the file formats."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from lsm.errors import InputError
from lsm.geometry import Point3, Polyline3


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class AdjacentKind(str, enum.Enum):
    SAME_DIRECTION = "same_direction"
    OPPOSITE_DIRECTION = "opposite_direction"
    VRUS = "vrus"
    NO_LANE = "no_lane"


class RoadType(str, enum.Enum):
    URBAN = "urban"
    RURAL = "rural"
    MOTORWAY = "motorway"


class UserClass(str, enum.Enum):
    VEHICLE = "vehicle"
    VRU = "vru"


class Classification(str, enum.Enum):
    INSUFFICIENT = "insufficient"
    VERY_BAD = "very_bad"
    BAD = "bad"
    GOOD = "good"
    VERY_GOOD = "very_good"


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation constants.

    ``x_lat`` is the desired lateral offset of the vehicle from the lane
    centre, positive toward the left boundary.
    """

    t_delay: float = 0.1
    a: float = 7.5
    x_lat: float = 0.0
    safety_margin_long: float = 1.1
    lat_usable_fraction: float = 0.8
    tp_threshold: float = 0.10
    sample_spacing: float = 0.10

    def __post_init__(self):
        for name in ("t_delay", "a", "x_lat", "safety_margin_long", "lat_usable_fraction",
                     "tp_threshold", "sample_spacing"):
            if not math.isfinite(getattr(self, name)):
                raise InputError(f"{name} must be finite")
        if self.t_delay < 0:
            raise InputError("t_delay must be >= 0")
        if self.a <= 0:
            raise InputError("braking deceleration a must be > 0")
        if self.safety_margin_long < 1:
            raise InputError("safety_margin_long must be >= 1")
        if not 0 < self.lat_usable_fraction <= 1:
            raise InputError("lat_usable_fraction must be in (0, 1]")
        if self.tp_threshold <= 0:
            raise InputError("tp_threshold must be > 0")
        if self.sample_spacing <= 0:
            raise InputError("sample_spacing must be > 0")


@dataclass(frozen=True)
class EgoState:
    v0: float
    vehicle_width: float

    def __post_init__(self):
        if not (math.isfinite(self.v0) and self.v0 >= 0):
            raise InputError("ego speed must be finite and >= 0")
        if not (math.isfinite(self.vehicle_width) and self.vehicle_width > 0):
            raise InputError("vehicle width must be finite and > 0")


@dataclass(frozen=True)
class AdjacentLaneInfo:
    kind: AdjacentKind = AdjacentKind.NO_LANE
    speed_limit: float = 0.0
    angle_deg: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.speed_limit) and self.speed_limit >= 0):
            raise InputError("speed limit must be finite and >= 0")
        if not (math.isfinite(self.angle_deg) and 0 <= self.angle_deg <= 180):
            raise InputError("adjacent-lane angle must be in [0, 180] degrees")
        if self.kind in (AdjacentKind.VRUS, AdjacentKind.NO_LANE) and self.speed_limit != 0:
            raise InputError(f"{self.kind.value} adjacent lane must have speed limit 0")


@dataclass(frozen=True)
class LaneContext:
    lane_width: float
    left_adjacent: AdjacentLaneInfo = field(default_factory=AdjacentLaneInfo)
    right_adjacent: AdjacentLaneInfo = field(default_factory=AdjacentLaneInfo)
    road_type: RoadType = RoadType.RURAL

    def __post_init__(self):
        if not (math.isfinite(self.lane_width) and self.lane_width > 0):
            raise InputError("lane width must be > 0")

    def adjacent(self, side: Side) -> AdjacentLaneInfo:
        return self.left_adjacent if side is Side.LEFT else self.right_adjacent


@dataclass(frozen=True)
class Lane:
    id: str
    left_boundary: Polyline3
    right_boundary: Polyline3
    context: LaneContext

    @property
    def width(self) -> float:
        return self.context.lane_width


@dataclass(frozen=True)
class DetectionFrame:
    frame_index: int
    timestamp: float
    ego: EgoState
    ego_origin: Point3
    left: Polyline3 | None = None
    right: Polyline3 | None = None

    @property
    def boundaries(self) -> list[Polyline3 | None]:
        return [self.left, self.right]
