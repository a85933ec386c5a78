"""Lane Safety Metric: safety scoring of lane detections against ground-truth lanes."""

from lsm.geometry import Point3, Polyline3, arc_length, centerline, closest_point, resample
from lsm.metric import SafetyResult, evaluate_frame
from lsm.perf import PerfResult, match_boundaries
from lsm.report import FrameResult, ScenarioSummary, aggregate, evaluate_trace
from lsm.sensor import SensorModel, sense, sense_sequence
from lsm.types import (
    AdjacentKind,
    AdjacentLaneInfo,
    Classification,
    DetectionFrame,
    EgoState,
    EvalConfig,
    Lane,
    LaneContext,
    RoadType,
    Side,
    UserClass,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacentKind",
    "AdjacentLaneInfo",
    "Classification",
    "DetectionFrame",
    "EgoState",
    "EvalConfig",
    "FrameResult",
    "Lane",
    "LaneContext",
    "PerfResult",
    "Point3",
    "Polyline3",
    "RoadType",
    "SafetyResult",
    "ScenarioSummary",
    "SensorModel",
    "Side",
    "UserClass",
    "aggregate",
    "arc_length",
    "centerline",
    "closest_point",
    "evaluate_frame",
    "evaluate_trace",
    "match_boundaries",
    "resample",
    "sense",
    "sense_sequence",
]
