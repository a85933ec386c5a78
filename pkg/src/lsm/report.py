"""Per-frame evaluation of a detection trace and per-scenario aggregation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from lsm.metric import SafetyResult, evaluate_frame
from lsm.perf import PerfResult, match_boundaries
from lsm.types import DetectionFrame, EvalConfig, Lane


@dataclass(frozen=True)
class FrameResult:
    frame_index: int
    safety: SafetyResult
    perf: PerfResult


@dataclass(frozen=True)
class ScenarioSummary:
    scenario_name: str
    safety_mean: float
    safety_min: float
    safety_max: float
    precision: float
    recall: float
    f1: float
    frame_count: int
    no_detection_count: int


def evaluate_trace(lane: Lane, frames: Iterable[DetectionFrame], cfg: EvalConfig) -> list[FrameResult]:
    """Safety and performance for every frame, ordered by frame index."""
    gt = [lane.left_boundary, lane.right_boundary]
    out = []
    for frame in frames:
        safety = evaluate_frame(frame, lane, cfg)
        perf = match_boundaries(frame.boundaries, gt, frame.ego_origin, cfg, safety.d_long)
        out.append(FrameResult(frame.frame_index, safety, perf))
    return sorted(out, key=lambda r: r.frame_index)


def aggregate(results: Sequence[FrameResult], scenario_name: str = "") -> ScenarioSummary:
    """Mean/min/max of S per frame; precision and recall pooled over all frames."""
    if not results:
        raise ValueError("cannot aggregate an empty result list")
    scores = [r.safety.S for r in results]
    pooled = sum((r.perf for r in results), PerfResult())
    return ScenarioSummary(
        scenario_name=scenario_name,
        safety_mean=sum(scores) / len(scores),
        safety_min=min(scores),
        safety_max=max(scores),
        precision=pooled.precision,
        recall=pooled.recall,
        f1=pooled.f1,
        frame_count=len(results),
        no_detection_count=sum(1 for r in results if r.safety.d_det == 0.0),
    )


def format_summary(summary: ScenarioSummary) -> str:
    return (
        f"{summary.scenario_name or 'scenario'}: frames={summary.frame_count} "
        f"no_detection={summary.no_detection_count} "
        f"S=(mean {summary.safety_mean:.2f}, min {summary.safety_min:.2f}, max {summary.safety_max:.2f}) "
        f"P={summary.precision:.4f} R={summary.recall:.4f} F1={summary.f1:.4f}"
    )


def format_table(summaries: Sequence[ScenarioSummary]) -> str:
    """Plain-text comparison table of safety against the point-wise metrics."""
    header = f"{'case':<8}{'S mean':>8}{'S min':>8}{'S max':>8}{'P':>9}{'R':>9}{'F1':>9}"
    lines = [header, "-" * len(header)]
    for s in summaries:
        lines.append(
            f"{s.scenario_name:<8}{s.safety_mean:>8.2f}{s.safety_min:>8.2f}{s.safety_max:>8.2f}"
            f"{s.precision:>9.4f}{s.recall:>9.4f}{s.f1:>9.4f}"
        )
    return "\n".join(lines)
