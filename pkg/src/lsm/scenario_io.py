"""Scenario (``.scenario.json``) and result (``.results.csv`` / ``.results.json``) formats.

Speeds are stored in m/s.  Any speed field may instead be given with a
``_kmh`` suffix and is converted on parse.  Validation collects every problem
it finds as an :class:`Issue` located by a JSON path before failing.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from lsm.errors import GeometryError, InputError, LsmError
from lsm.geometry import Point3, Polyline3, centerline, closest_points
from lsm.metric import SafetyResult, ViolationRun
from lsm.perf import PerfResult
from lsm.report import FrameResult
from lsm.sensor import OffsetSegment, SensorModel, Trajectory
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
)

SCHEMA_VERSION = "1.0"
RESULTS_SCHEMA_VERSION = "1.0"
# Total lateral movement room by road type, for the widest legal vehicle.
MOVEMENT_TOLERANCE = {RoadType.URBAN: 0.70, RoadType.RURAL: 0.95, RoadType.MOTORWAY: 1.20}
MAX_VEHICLE_WIDTH = 2.55
MOVEMENT_TOLERANCE_SLACK = 0.05
WIDTH_WARN_FRACTION = 0.20
WIDTH_ERROR_FRACTION = 0.50
COORD_DECIMALS = 6

CSV_COLUMNS = (
    "frame_index", "d_long", "d_det", "v_r", "s_long", "s_lat", "s_scen", "S",
    "classification", "tp", "fp", "fn", "precision", "recall", "f1",
)


@dataclass(frozen=True)
class Issue:
    path: str
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.path or '<root>'}: {self.message}"


class ScenarioError(LsmError):
    def __init__(self, issues: list[Issue]):
        self.issues = issues
        super().__init__("\n".join(str(i) for i in issues))


@dataclass(frozen=True)
class ScenarioFile:
    schema_version: str
    name: str
    lane: Lane
    eval_config: EvalConfig
    frames: tuple[DetectionFrame, ...] | None = None
    trajectory: Trajectory | None = None
    sensor: SensorModel | None = None
    warnings: tuple[Issue, ...] = field(default=(), compare=False)


def lookup_movement_tolerance(road_type: RoadType | str) -> float:
    return MOVEMENT_TOLERANCE[RoadType(road_type)]


# -- parsing --------------------------------------------------------------------


class _Reader:
    """Accumulates located issues while walking a decoded JSON document."""

    def __init__(self, strict: bool):
        self.strict = strict
        self.issues: list[Issue] = []

    def error(self, path: str, message: str) -> None:
        self.issues.append(Issue(path, message, "error"))

    def warn(self, path: str, message: str) -> None:
        self.issues.append(Issue(path, message, "error" if self.strict else "warning"))

    @property
    def failed(self) -> bool:
        return any(i.severity == "error" for i in self.issues)

    def obj(self, value: Any, path: str, known: set[str]) -> dict | None:
        if not isinstance(value, dict):
            self.error(path, f"expected an object, got {type(value).__name__}")
            return None
        for key in value:
            if key not in known:
                self.warn(f"{path}.{key}", "unknown field")
        return value

    def number(
        self,
        d: dict,
        key: str,
        path: str,
        default: float | None = None,
        *,
        minimum: float | None = None,
        exclusive: bool = False,
        allow_inf: bool = False,
    ) -> float | None:
        p = f"{path}.{key}"
        if key not in d:
            if default is None:
                self.error(p, "required field missing")
            return default
        value = d[key]
        if value is None and allow_inf:
            # null stands for an unbounded value
            return math.inf
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.error(p, f"expected a number, got {type(value).__name__}")
            return None
        value = float(value)
        if not math.isfinite(value) and not (allow_inf and value == math.inf):
            self.error(p, "non-finite number")
            return None
        if minimum is not None and (value <= minimum if exclusive else value < minimum):
            self.error(p, f"must be {'>' if exclusive else '>='} {minimum}")
            return None
        return value

    def speed(self, d: dict, base: str, path: str, default: float | None = None) -> float | None:
        mps, kmh = f"{base}_mps", f"{base}_kmh"
        if mps in d and kmh in d:
            self.error(f"{path}.{base}", f"give either {mps} or {kmh}, not both")
            return None
        if kmh in d:
            v = self.number(d, kmh, path, minimum=0.0)
            return None if v is None else v / 3.6
        return self.number(d, mps, path, default, minimum=0.0)

    def integer(self, d: dict, key: str, path: str, default: int | None = None) -> int | None:
        p = f"{path}.{key}"
        if key not in d:
            if default is None:
                self.error(p, "required field missing")
            return default
        value = d[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.error(p, f"expected an integer, got {type(value).__name__}")
            return None
        return value

    def enum(self, d: dict, key: str, path: str, cls, default=None):
        p = f"{path}.{key}"
        if key not in d:
            if default is None:
                self.error(p, "required field missing")
            return default
        try:
            return cls(d[key])
        except (ValueError, TypeError):
            allowed = ", ".join(m.value for m in cls)
            self.error(p, f"invalid value {d[key]!r} (allowed: {allowed})")
            return None

    def point(self, value: Any, path: str) -> Point3 | None:
        if (
            not isinstance(value, list)
            or len(value) not in (2, 3)
            or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in value)
        ):
            self.error(path, "expected a point [x, y] or [x, y, z] of numbers")
            return None
        if not all(math.isfinite(c) for c in value):
            self.error(path, "non-finite coordinate")
            return None
        return Point3(*(float(c) for c in value))

    def polyline(self, value: Any, path: str) -> Polyline3 | None:
        if not isinstance(value, list):
            self.error(path, f"expected a list of points, got {type(value).__name__}")
            return None
        if len(value) < 2:
            self.error(path, "a polyline needs at least 2 points")
            return None
        pts = [self.point(v, f"{path}[{i}]") for i, v in enumerate(value)]
        if any(p is None for p in pts):
            return None
        try:
            return Polyline3(pts)
        except GeometryError as exc:
            self.error(path, str(exc))
            return None

    def build(self, path: str, factory: Callable, *args, **kwargs):
        """Construct a record, turning its own invariant checks into issues."""
        if any(a is None for a in args) or any(v is None for v in kwargs.values()):
            return None
        try:
            return factory(*args, **kwargs)
        except (InputError, GeometryError) as exc:
            self.error(path, str(exc))
            return None


def _parse_adjacent(r: _Reader, value: Any, path: str) -> AdjacentLaneInfo | None:
    d = r.obj(value, path, {"kind", "speed_limit_mps", "speed_limit_kmh", "angle_deg"})
    if d is None:
        return None
    kind = r.enum(d, "kind", path, AdjacentKind)
    return r.build(
        path,
        AdjacentLaneInfo,
        kind=kind,
        speed_limit=r.speed(d, "speed_limit", path, 0.0),
        angle_deg=r.number(d, "angle_deg", path, 0.0),
    )


def _left_of_right(lane: Lane, samples: int = 200) -> bool:
    """True when the left boundary stays on the left at every paired station."""
    frac = np.linspace(0.0, 1.0, samples)
    lb, rb = lane.left_boundary, lane.right_boundary
    heading = lb.tangents(frac * lb.length) + rb.tangents(frac * rb.length)
    across = lb.interpolate(frac * lb.length) - rb.interpolate(frac * rb.length)
    return bool(np.all(heading[:, 0] * across[:, 1] - heading[:, 1] * across[:, 0] > 0))


def _check_lane_geometry(r: _Reader, lane: Lane, spacing: float, path: str) -> None:
    try:
        mid = centerline(lane.left_boundary, lane.right_boundary, spacing)
    except GeometryError as exc:
        r.error(path, str(exc))
        return
    _, d_left, _ = closest_points(lane.left_boundary, mid.points)
    _, d_right, _ = closest_points(lane.right_boundary, mid.points)
    if np.any(d_left <= 0) or np.any(d_right <= 0) or not _left_of_right(lane):
        r.error(path, "lane boundaries touch or cross")
        return
    measured = float(np.mean(d_left + d_right))
    rel = abs(lane.width - measured) / measured
    if rel > WIDTH_ERROR_FRACTION:
        r.error(f"{path}.width_m", f"stated width {lane.width} m differs from measured {measured:.3f} m by {rel:.0%}")
    elif rel > WIDTH_WARN_FRACTION:
        r.warn(f"{path}.width_m", f"stated width {lane.width} m differs from measured {measured:.3f} m by {rel:.0%}")


def _parse_lane(r: _Reader, value: Any, path: str) -> Lane | None:
    d = r.obj(
        value,
        path,
        {"id", "width_m", "road_type", "left_boundary", "right_boundary", "left_adjacent", "right_adjacent"},
    )
    if d is None:
        return None
    lane_id = d.get("id", "lane")
    if not isinstance(lane_id, str):
        r.error(f"{path}.id", "expected a string")
        lane_id = None
    width = r.number(d, "width_m", path, minimum=0.0, exclusive=True)
    road_type = r.enum(d, "road_type", path, RoadType, RoadType.RURAL)
    left = r.polyline(d.get("left_boundary"), f"{path}.left_boundary")
    right = r.polyline(d.get("right_boundary"), f"{path}.right_boundary")
    left_adj = _parse_adjacent(r, d.get("left_adjacent", {"kind": "no_lane"}), f"{path}.left_adjacent")
    right_adj = _parse_adjacent(r, d.get("right_adjacent", {"kind": "no_lane"}), f"{path}.right_adjacent")
    ctx = r.build(
        path, LaneContext, lane_width=width, left_adjacent=left_adj, right_adjacent=right_adj, road_type=road_type
    )
    lane = r.build(path, Lane, id=lane_id, left_boundary=left, right_boundary=right, context=ctx)
    if width is not None and road_type is not None:
        table = MOVEMENT_TOLERANCE[road_type]
        room = width - MAX_VEHICLE_WIDTH
        if abs(room - table) > MOVEMENT_TOLERANCE_SLACK:
            r.warn(
                f"{path}.width_m",
                f"movement room {room:.2f} m at {MAX_VEHICLE_WIDTH} m vehicle width differs from "
                f"the {road_type.value} tolerance {table:.2f} m",
            )
    return lane


def _parse_config(r: _Reader, value: Any, path: str) -> EvalConfig | None:
    defaults = EvalConfig()
    d = r.obj(
        value,
        path,
        {"t_delay_s", "a_mps2", "x_lat_m", "safety_margin_long", "lat_usable_fraction",
         "tp_threshold_m", "sample_spacing_m"},
    )
    if d is None:
        return None
    return r.build(
        path,
        EvalConfig,
        t_delay=r.number(d, "t_delay_s", path, defaults.t_delay),
        a=r.number(d, "a_mps2", path, defaults.a),
        x_lat=r.number(d, "x_lat_m", path, defaults.x_lat),
        safety_margin_long=r.number(d, "safety_margin_long", path, defaults.safety_margin_long),
        lat_usable_fraction=r.number(d, "lat_usable_fraction", path, defaults.lat_usable_fraction),
        tp_threshold=r.number(d, "tp_threshold_m", path, defaults.tp_threshold),
        sample_spacing=r.number(d, "sample_spacing_m", path, defaults.sample_spacing),
    )


def _parse_ego(r: _Reader, value: Any, path: str) -> EgoState | None:
    d = r.obj(value, path, {"speed_mps", "speed_kmh", "vehicle_width_m"})
    if d is None:
        return None
    return r.build(
        path,
        EgoState,
        v0=r.speed(d, "speed", path),
        vehicle_width=r.number(d, "vehicle_width_m", path, minimum=0.0, exclusive=True),
    )


def _parse_frames(r: _Reader, value: Any, path: str) -> list[DetectionFrame] | None:
    if not isinstance(value, list):
        r.error(path, "expected a list of frames")
        return None
    frames = []
    for i, item in enumerate(value):
        p = f"{path}[{i}]"
        d = r.obj(item, p, {"frame_index", "timestamp_s", "ego", "ego_origin", "left", "right"})
        if d is None:
            continue
        idx = r.integer(d, "frame_index", p)
        ts = r.number(d, "timestamp_s", p)
        ego = _parse_ego(r, d.get("ego"), f"{p}.ego")
        origin = r.point(d.get("ego_origin"), f"{p}.ego_origin")
        left = r.polyline(d["left"], f"{p}.left") if d.get("left") is not None else None
        right = r.polyline(d["right"], f"{p}.right") if d.get("right") is not None else None
        if (d.get("left") is not None and left is None) or (d.get("right") is not None and right is None):
            continue
        if None in (idx, ts, ego, origin):
            continue
        frames.append(DetectionFrame(idx, ts, ego, origin, left, right))
    for prev, cur in zip(frames, frames[1:]):
        if cur.frame_index <= prev.frame_index:
            r.error(path, f"frame_index {cur.frame_index} not strictly increasing")
        if cur.timestamp < prev.timestamp:
            r.error(path, f"timestamp decreases at frame_index {cur.frame_index}")
    return frames


def _parse_trajectory(r: _Reader, value: Any, path: str) -> Trajectory | None:
    d = r.obj(value, path, {"ego", "origins", "dt_s", "start_time_s"})
    if d is None:
        return None
    ego = _parse_ego(r, d.get("ego"), f"{path}.ego")
    raw = d.get("origins")
    origins = None
    if not isinstance(raw, list) or not raw:
        r.error(f"{path}.origins", "expected a non-empty list of points")
    else:
        pts = [r.point(v, f"{path}.origins[{i}]") for i, v in enumerate(raw)]
        origins = tuple(pts) if all(p is not None for p in pts) else None
    return r.build(
        path,
        Trajectory,
        origins=origins,
        ego=ego,
        dt=r.number(d, "dt_s", path, 0.1, minimum=0.0),
        start_time=r.number(d, "start_time_s", path, 0.0),
    )


def _parse_sensor(r: _Reader, value: Any, path: str) -> SensorModel | None:
    d = r.obj(
        value,
        path,
        {"range_left_m", "range_right_m", "lateral_noise_sigma_m", "offset_left_m", "offset_right_m",
         "offset_schedule", "dropout_frame_prob", "dropout_boundary_prob", "seed", "sample_spacing_m"},
    )
    if d is None:
        return None
    schedule = []
    raw = d.get("offset_schedule", [])
    if not isinstance(raw, list):
        r.error(f"{path}.offset_schedule", "expected a list")
        raw = []
    for i, item in enumerate(raw):
        p = f"{path}.offset_schedule[{i}]"
        sd = r.obj(item, p, {"side", "s_start_m", "s_end_m", "offset_m"})
        if sd is None:
            continue
        seg = r.build(
            p,
            OffsetSegment,
            side=r.enum(sd, "side", p, Side),
            s_start=r.number(sd, "s_start_m", p),
            s_end=r.number(sd, "s_end_m", p),
            offset=r.number(sd, "offset_m", p),
        )
        if seg is not None:
            schedule.append(seg)
    return r.build(
        path,
        SensorModel,
        range_left=r.number(d, "range_left_m", path, math.inf, minimum=0.0, exclusive=True, allow_inf=True),
        range_right=r.number(d, "range_right_m", path, math.inf, minimum=0.0, exclusive=True, allow_inf=True),
        lateral_noise_sigma=r.number(d, "lateral_noise_sigma_m", path, 0.0, minimum=0.0),
        offset_left=r.number(d, "offset_left_m", path, 0.0),
        offset_right=r.number(d, "offset_right_m", path, 0.0),
        offset_schedule=tuple(schedule),
        dropout_frame_prob=r.number(d, "dropout_frame_prob", path, 0.0),
        dropout_boundary_prob=r.number(d, "dropout_boundary_prob", path, 0.0),
        seed=r.integer(d, "seed", path, 0),
        sample_spacing=r.number(d, "sample_spacing_m", path, 0.10, minimum=0.0, exclusive=True),
    )


def _check_ego_fits(r: _Reader, ego: EgoState, lane: Lane, path: str) -> None:
    if ego.vehicle_width >= lane.width:
        r.error(
            f"{path}.vehicle_width_m",
            f"vehicle width {ego.vehicle_width} m is not smaller than lane width {lane.width} m; "
            "tolerable lateral deviation (lane width - vehicle width) / 2 must be positive",
        )


def parse_scenario(data: bytes | str, strict: bool = False) -> ScenarioFile:
    """Decode and validate a scenario document.

    Raises :class:`ScenarioError` listing every located problem.  With
    ``strict`` every warning (unknown fields, width mismatches) is an error.
    """
    r = _Reader(strict)
    try:
        text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
        doc = json.loads(text)
    except UnicodeDecodeError as exc:
        raise ScenarioError([Issue("", f"not UTF-8: {exc}")]) from None
    except json.JSONDecodeError as exc:
        raise ScenarioError([Issue("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")]) from None
    except RecursionError:
        raise ScenarioError([Issue("", "JSON nested too deeply")]) from None

    d = r.obj(
        doc, "", {"schema_version", "name", "lane", "eval_config", "frames", "trajectory", "sensor"}
    )
    if d is None:
        raise ScenarioError(r.issues)
    version = d.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ScenarioError([Issue("schema_version", f"unsupported schema version {version!r} (expected {SCHEMA_VERSION!r})")])
    name = d.get("name", "")
    if not isinstance(name, str):
        r.error("name", "expected a string")
        name = ""

    cfg = _parse_config(r, d.get("eval_config", {}), "eval_config")
    lane = _parse_lane(r, d.get("lane"), "lane")
    has_frames = "frames" in d
    has_synth = "trajectory" in d or "sensor" in d
    frames = trajectory = sensor = None
    if has_frames == has_synth:
        r.error("", "exactly one of 'frames' or 'trajectory' + 'sensor' must be present")
    elif has_frames:
        frames = _parse_frames(r, d["frames"], "frames")
    else:
        if "trajectory" not in d or "sensor" not in d:
            r.error("", "'trajectory' and 'sensor' must be given together")
        else:
            trajectory = _parse_trajectory(r, d["trajectory"], "trajectory")
            sensor = _parse_sensor(r, d["sensor"], "sensor")

    if lane is not None and cfg is not None:
        _check_lane_geometry(r, lane, cfg.sample_spacing, "lane")
    if lane is not None:
        for i, f in enumerate(frames or []):
            _check_ego_fits(r, f.ego, lane, f"frames[{i}].ego")
        if trajectory is not None:
            _check_ego_fits(r, trajectory.ego, lane, "trajectory.ego")

    if r.failed:
        raise ScenarioError([i for i in r.issues if i.severity == "error"])
    return ScenarioFile(
        schema_version=version,
        name=name,
        lane=lane,
        eval_config=cfg,
        frames=tuple(frames) if frames is not None else None,
        trajectory=trajectory,
        sensor=sensor,
        warnings=tuple(r.issues),
    )


# -- writing --------------------------------------------------------------------


def _coords(p: Polyline3 | Point3) -> list:
    arr = p.points if isinstance(p, Polyline3) else np.asarray(p, dtype=float)
    return np.round(arr, COORD_DECIMALS).tolist()


def _adjacent_dict(a: AdjacentLaneInfo) -> dict:
    return {"kind": a.kind.value, "speed_limit_mps": a.speed_limit, "angle_deg": a.angle_deg}


def _ego_dict(e: EgoState) -> dict:
    return {"speed_mps": e.v0, "vehicle_width_m": e.vehicle_width}


def _range(v: float) -> float | None:
    return None if math.isinf(v) else v


def scenario_to_dict(sf: ScenarioFile) -> dict:
    lane, cfg = sf.lane, sf.eval_config
    out: dict[str, Any] = {
        "schema_version": sf.schema_version,
        "name": sf.name,
        "lane": {
            "id": lane.id,
            "width_m": lane.width,
            "road_type": lane.context.road_type.value,
            "left_boundary": _coords(lane.left_boundary),
            "right_boundary": _coords(lane.right_boundary),
            "left_adjacent": _adjacent_dict(lane.context.left_adjacent),
            "right_adjacent": _adjacent_dict(lane.context.right_adjacent),
        },
        "eval_config": {
            "t_delay_s": cfg.t_delay,
            "a_mps2": cfg.a,
            "x_lat_m": cfg.x_lat,
            "safety_margin_long": cfg.safety_margin_long,
            "lat_usable_fraction": cfg.lat_usable_fraction,
            "tp_threshold_m": cfg.tp_threshold,
            "sample_spacing_m": cfg.sample_spacing,
        },
    }
    if sf.frames is not None:
        out["frames"] = [
            {
                "frame_index": f.frame_index,
                "timestamp_s": f.timestamp,
                "ego": _ego_dict(f.ego),
                "ego_origin": _coords(f.ego_origin),
                "left": _coords(f.left) if f.left is not None else None,
                "right": _coords(f.right) if f.right is not None else None,
            }
            for f in sf.frames
        ]
    if sf.trajectory is not None:
        t = sf.trajectory
        out["trajectory"] = {
            "ego": _ego_dict(t.ego),
            "dt_s": t.dt,
            "start_time_s": t.start_time,
            "origins": [_coords(o) for o in t.origins],
        }
    if sf.sensor is not None:
        m = sf.sensor
        out["sensor"] = {
            "range_left_m": _range(m.range_left),
            "range_right_m": _range(m.range_right),
            "lateral_noise_sigma_m": m.lateral_noise_sigma,
            "offset_left_m": m.offset_left,
            "offset_right_m": m.offset_right,
            "offset_schedule": [
                {"side": s.side.value, "s_start_m": s.s_start, "s_end_m": s.s_end, "offset_m": s.offset}
                for s in m.offset_schedule
            ],
            "dropout_frame_prob": m.dropout_frame_prob,
            "dropout_boundary_prob": m.dropout_boundary_prob,
            "seed": m.seed,
            "sample_spacing_m": m.sample_spacing,
        }
    return out


def write_scenario(sf: ScenarioFile, compact: bool = False) -> bytes:
    doc = scenario_to_dict(sf)
    if compact:
        text = json.dumps(doc, separators=(",", ":"), allow_nan=False)
    else:
        text = json.dumps(doc, indent=2, allow_nan=False)
    return (text + "\n").encode("utf-8")


def _f4(v: float | None) -> str:
    return "" if v is None else f"{v:.4f}"


def _result_dict(r: FrameResult) -> dict:
    s, p = r.safety, r.perf
    return {
        "frame_index": r.frame_index,
        "d_long": s.d_long,
        "d_det": s.d_det,
        "v_r": s.v_r,
        "s_long": s.s_long,
        "s_lat": s.s_lat,
        "s_scen": s.s_scen,
        "S": s.S,
        "classification": s.classification.value,
        "tp": p.tp,
        "fp": p.fp,
        "fn": p.fn,
        "precision": p.precision,
        "recall": p.recall,
        "f1": p.f1,
        "violation_runs": [[v.s_start, v.s_end, v.side.value] for v in s.violation_runs],
        "error": s.error,
    }


def write_results(results: list[FrameResult], fmt: str = "csv") -> bytes:
    """Serialise per-frame results as CSV (4 decimals) or JSON (full precision)."""
    fmt = fmt.lower()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in results:
            d = _result_dict(r)
            w.writerow(
                [
                    d["frame_index"], _f4(d["d_long"]), _f4(d["d_det"]), _f4(d["v_r"]),
                    _f4(d["s_long"]), _f4(d["s_lat"]), _f4(d["s_scen"]), _f4(d["S"]),
                    d["classification"], d["tp"], d["fp"], d["fn"],
                    _f4(d["precision"]), _f4(d["recall"]), _f4(d["f1"]),
                ]
            )
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {"schema_version": RESULTS_SCHEMA_VERSION, "results": [_result_dict(r) for r in results]}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown results format {fmt!r}")


def parse_results(data: bytes | str) -> list[FrameResult]:
    """Inverse of ``write_results(..., 'json')``."""
    doc = json.loads(data)
    out = []
    for d in doc["results"]:
        safety = SafetyResult(
            s_long=d["s_long"],
            s_lat=d["s_lat"],
            s_scen=d["s_scen"],
            S=d["S"],
            d_long=d["d_long"],
            d_det=d["d_det"],
            v_r=d["v_r"],
            violation_runs=[ViolationRun(a, b, Side(side)) for a, b, side in d["violation_runs"]],
            classification=Classification(d["classification"]),
            error=d.get("error"),
        )
        out.append(FrameResult(d["frame_index"], safety, PerfResult(d["tp"], d["fp"], d["fn"])))
    return out
